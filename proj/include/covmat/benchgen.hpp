#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "covmat/incremental.hpp"

namespace covmat {

/// Parameters for random covering-system generation. Each covering is built
/// by (a) assigning every object one uniformly random block, (b) adding each
/// object to each other block independently with extra_membership_prob, and
/// (c) repairing any empty block with one uniformly random object. The same
/// spec always generates the same system.
struct GenSpec {
    std::size_t objects = 1000;
    std::size_t coverings = 20;
    std::size_t blocks_per_covering = 5;
    double extra_membership_prob = 0.1;
    std::uint64_t seed = 0;
};

/// Throws std::invalid_argument unless
/// objects >= blocks_per_covering >= 1, coverings >= 1, prob in [0, 1].
void check_spec(const GenSpec& spec);

CoveringSystem generate_system(const GenSpec& spec);

/// One timed algorithm over one generated system.
struct BenchRecord {
    std::string algorithm;  // NIS, IS, NIX or IX
    std::size_t objects = 0;
    std::size_t coverings = 0;
    std::size_t repetitions = 0;
    std::vector<double> times;  // seconds, one per repetition
    double mean = 0.0;
    double variance = 0.0;  // population variance (divide by N)
};

/// Recomputes mean and population variance from times.
void fill_stats(BenchRecord& record);

/// Times the four pipelines on the generated system plus one freshly
/// generated extra covering. The incremental pipelines reuse the base
/// system's precomputed characteristic matrices; the non-incremental ones
/// rebuild from the extended system. Before any timing the four outputs are
/// checked bitwise equal (NIS vs IS, NIX vs IX) and a mismatch throws.
/// Each algorithm gets one warm-up run excluded from the statistics, then
/// `repetitions` timed runs. When x is absent, a seeded random half of the
/// universe is used, fixed for the whole run set.
std::vector<BenchRecord> run_benchmark(const GenSpec& spec, std::size_t repetitions = 10,
                                       const std::optional<SubsetVector>& x = std::nullopt);

/// CSV with columns algorithm,n,m,rep,seconds: one row per repetition, then
/// a mean and a variance summary row per algorithm (rep column "mean" /
/// "variance"). Doubles are printed with enough digits to round-trip.
void export_csv(const std::vector<BenchRecord>& records, std::ostream& out);
void export_csv(const std::vector<BenchRecord>& records, const std::string& path);

/// Reads the format written by export_csv; summary rows fill mean/variance.
std::vector<BenchRecord> import_csv(std::istream& in);

}  // namespace covmat
