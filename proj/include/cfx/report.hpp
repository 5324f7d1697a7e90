#pragma once

#include <cstdint>
#include <json.hpp>
#include <stdexcept>
#include <string>

namespace cfx {

// input is well formed but the mathematical precondition fails (e.g. a group that is not right-type)
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Outcome of one verification. JSON keys are sorted, so equal runs give equal bytes.
struct Report {
    std::string identity;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 0;
    bool pass = true;
    std::string residual = "0";
    nlohmann::json details = nlohmann::json::object();

    Report() = default;
    Report(std::string id, nlohmann::json p = nlohmann::json::object(), std::uint64_t s = 0)
        : identity(std::move(id)), params(std::move(p)), seed(s) {}

    // first failure wins the residual slot
    void fail(const std::string &res) {
        if (pass) residual = res;
        pass = false;
    }

    nlohmann::json to_json() const {
        nlohmann::json j{{"identity", identity}, {"params", params}, {"seed", seed}, {"pass", pass}, {"residual", residual}};
        if (!details.empty()) j["details"] = details;
        return j;
    }
};

} // namespace cfx
