#pragma once

// The acceptance suite as data: every criterion runs its finite sweep and
// reports a status, an instance count, a summary and the first failures.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "drinfeld/io.hpp"

namespace drinfeld {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

enum class Status { pass, fail, not_applicable };
std::string to_string(Status s);

struct CriterionResult {
    int id = 0;
    std::string name;
    Status status = Status::not_applicable;
    std::int64_t instances = 0;
    Json summary = Json::object();
    std::vector<Json> failures;  // capped
    double seconds = 0;          // wall time; kept out of the bundle
    double budget_seconds = 0;
};

struct CertifyOptions {
    std::uint64_t seed = kDefaultSeed;
    std::optional<int> d;
    std::optional<std::uint64_t> p;
    // Restrict to these criterion ids when nonempty.
    std::vector<int> only;
    // Called after each criterion, e.g. for progress lines.
    std::function<void(const CriterionResult&)> on_result;
};

struct Bundle {
    std::uint64_t seed = 0;
    std::optional<int> d;
    std::optional<std::uint64_t> p;
    std::vector<CriterionResult> results;

    bool all_pass() const;  // not_applicable counts as neither
    // Deterministic: no timestamps, no timings.
    Json to_json() const;
};

Bundle certify_all(const CertifyOptions& opts);

// A point certified in the level-1 cover, drawn from the tube over the
// standard vertex or over a random edge leaving it.
SymmetricSpacePoint random_level_one_point(const Field& L, int d, std::mt19937_64& rng);

}  // namespace drinfeld
