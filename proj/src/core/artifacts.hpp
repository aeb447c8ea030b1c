#pragma once

#include <cstdint>
#include <string>

namespace fo::run {

struct Options {
    std::string out_dir;
    unsigned threads = 0; // 0 = hardware
    bool has_seed = false;
    std::uint64_t seed = 0;
    bool has_tolerance = false;
    double tolerance = 0.0;
};

// Executes one experiment command (generate, discrepancy, dyadic, vdc,
// lemma5, lil, clt, constants, selftest) against a JSON config, writing
// artifacts under opt.out_dir. Returns the summary JSON object as text.
// Bound/invariant failures throw FO_EBOUND after the witness artifacts
// are written; config problems throw FO_EINVAL before any write.
std::string run_command(const std::string& command, const std::string& config_json,
                        const Options& opt);

} // namespace fo::run
