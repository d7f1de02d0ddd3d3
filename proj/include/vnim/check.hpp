#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vnim/oracle.hpp"
#include "vnim/solver.hpp"

namespace vnim {

struct CheckOptions
{
    OracleBudget budget{};
    /// For N instances, also require a witness whose successor the oracle scores P.
    bool verify_witness = false;
    /// For all-loops undirected instances, also compare the linear fast path against the general dispatch.
    bool compare_fast_path = false;
};

struct Mismatch
{
    std::string key;
    std::string instance;
    std::string detail;
};

struct CheckReport
{
    std::size_t tested = 0;
    std::size_t routed = 0;
    std::size_t unroutable = 0;
    std::size_t witnesses_checked = 0;
    std::size_t fallback_activations = 0;
    std::size_t fast_path_checked = 0;
    /// Sorted by key.
    std::vector<Mismatch> mismatches;

    bool clean() const noexcept { return mismatches.empty(); }
};

/// Reference implementation: one instance after the other.
CheckReport check_instances_serial(std::span<const Position> instances, const CheckOptions& options, Oracle& oracle);

/// OpenMP version; produces the same report as the serial one.
CheckReport check_instances_parallel(std::span<const Position> instances, const CheckOptions& options,
                                     Oracle& oracle);

struct Sampling
{
    std::size_t count = 0;
    std::uint64_t seed = 0;
};

/// Throws BudgetExceeded if the envelope's largest instance is outside the oracle budget.
CheckReport run_check(const Envelope& env, const CheckOptions& options, std::optional<Sampling> sampling = {},
                      bool parallel = true);

/// Writes one instance file per mismatch into dir; returns the paths.
std::vector<std::string> write_reproductions(const CheckReport& report, const std::string& dir);

struct ExploreRange
{
    std::size_t n_min = 3;
    std::size_t n_max = 4;
    Weight max_weight = 2;
    std::size_t min_ones = 1;
    OracleBudget budget{};
};

/// CSV "n,weights,start,outcome,formula" of oracle outcomes on directed circuits.
void explore_circuits(const ExploreRange& range, std::ostream& out);

} // namespace vnim
