#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "error.hpp"

namespace fo::io {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), FO_EIO, "cannot open " + path.string());
    out << content;
    out.flush();
    require(out.good(), FO_EIO, "write failed for " + path.string());
}

inline std::string read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), FO_EIO, "cannot open " + path.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return data;
}

} // namespace fo::io
