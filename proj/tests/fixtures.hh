#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "partref/coalgebra.hh"
#include "partref/encoding.hh"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(PARTREF_TEST_DATA) + "/" + name; }

inline std::string read(const std::string& name) {
    std::ifstream in(data_path(name), std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Blocks of original states as lists of names.
inline std::vector<std::vector<std::string>> named(const std::vector<std::vector<partref::StateIdx>>& blocks,
                                                   const partref::Coalgebra& sys) {
    std::vector<std::vector<std::string>> out;
    for (const auto& b : blocks) {
        out.emplace_back();
        for (partref::StateIdx x : b) out.back().push_back(sys.states[x].name);
    }
    return out;
}

using Names = std::vector<std::vector<std::string>>;

}  // namespace fixtures
