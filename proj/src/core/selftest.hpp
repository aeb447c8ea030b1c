#pragma once

#include "json.hpp"

namespace fo::run {
struct Options;
}

namespace fo::selftest {

// Acceptance suite: runs every criterion, writes artifacts under
// opt.out_dir and returns a summary with one entry per criterion.
// Throws FO_EBOUND after writing when any criterion fails.
// cfg supports {"quick": true} for a reduced smoke-test run.
nlohmann::json run(const nlohmann::json& cfg, const run::Options& opt);

} // namespace fo::selftest
