#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twist/audit.hpp"

namespace tw {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kSuiteNames[5] = {"identities", "modules", "schemes", "incidence", "sequences"};

// mode: full (symbolic identities plus every prime), symbolic, or specialized
struct RunConfig {
    std::string mode = "full";
    std::vector<std::string> suites{"all"};
    std::vector<uint32_t> primes{29, 37};
    uint64_t seed = 1;
    int cutoff = 7;
    int jobs = 1;
    bool dump_modules = false;
};

// throws ConfigError; expands "all" into the suites allowed by the mode
RunConfig validate(RunConfig c);

struct PrimeChoice {
    uint32_t requested = 0, used = 0;
};

// the next prime >= p with a split admissible tuple, skipping those already taken
std::vector<PrimeChoice> resolve_primes(const std::vector<uint32_t>& primes, uint64_t seed);

struct SuiteResult {
    std::string suite;
    std::string field;  // "symbolic" or "p=<prime>"
    std::vector<AuditReport> audits;
    bool pass() const;
    Json json() const;
};

struct RunReport {
    RunConfig config;
    std::vector<PrimeChoice> primes;
    std::vector<SuiteResult> suites;
    AuditReport agreement;  // prime-independent invariants compared across primes
    Json extra;             // parameters, incidence tables, module dumps
    std::vector<std::string> tables;  // Markdown tables per prime
    bool pass() const;
    Json json() const;
    std::string markdown() const;
};

// runs the suites in dependency order; progress lines go to the callback
RunReport run(const RunConfig& config, const std::function<void(const std::string&)>& log = {});

} // namespace tw
