#pragma once

#include <string>
#include <vector>

namespace twistor::report {

inline constexpr const char* kToolVersion = "0.1.0";

struct Claim {
    std::string id;
    std::string description;
    bool pass = false;
    std::string witness;
};

struct Suite {
    std::string name;
    std::vector<Claim> claims;

    void add(std::string id, std::string description, bool pass, std::string witness = "") {
        claims.push_back({std::move(id), std::move(description), pass, std::move(witness)});
    }

    bool all_pass() const {
        for (const Claim& c : claims)
            if (!c.pass) return false;
        return true;
    }
};

struct Report {
    std::string version = kToolVersion;
    std::vector<std::string> lambdas;
    std::vector<Suite> suites;

    bool all_pass() const {
        for (const Suite& s : suites)
            if (!s.all_pass()) return false;
        return true;
    }
};

}  // namespace twistor::report
