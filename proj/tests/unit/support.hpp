#pragma once

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

namespace cohomoforge::test {

// values written by the dense reference implementation in tests/oracle
inline const nlohmann::json& oracle() {
    static const nlohmann::json doc = [] {
        std::ifstream in(COHOMOFORGE_ORACLE_JSON);
        if (!in)
            throw std::runtime_error("oracle output missing: " COHOMOFORGE_ORACLE_JSON);
        return nlohmann::json::parse(in);
    }();
    return doc;
}

inline std::string data_path(const std::string& name) {
    return std::string(COHOMOFORGE_TEST_DATA) + "/" + name;
}

} // namespace cohomoforge::test
