#include "covmat/benchgen.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace covmat {

namespace {

using Rng = std::mt19937_64;

// Raw-engine draws only: the standard distributions are not guaranteed to
// produce the same streams across library implementations.
std::size_t bounded(Rng& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
}

bool coin(Rng& rng, double p) {
    if (p <= 0.0) {
        return false;
    }
    if (p >= 1.0) {
        return true;
    }
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

std::uint64_t mix_seed(std::uint64_t seed) {
    // splitmix64 step, so the extra covering and the subset draw do not
    // replay the system generator's stream.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Covering generate_covering(Rng& rng, std::size_t n, std::size_t blocks, double p,
                           std::string name) {
    std::vector<std::vector<char>> member(blocks, std::vector<char>(n, 0));
    std::vector<std::size_t> primary(n);
    for (std::size_t i = 0; i < n; ++i) {
        primary[i] = bounded(rng, blocks);
        member[primary[i]][i] = 1;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t b = 0; b < blocks; ++b) {
            if (b != primary[i] && coin(rng, p)) {
                member[b][i] = 1;
            }
        }
    }
    Covering out;
    out.name = std::move(name);
    out.blocks.resize(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        bool empty = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (member[b][i]) {
                empty = false;
                break;
            }
        }
        if (empty) {
            member[b][bounded(rng, n)] = 1;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (member[b][i]) {
                out.blocks[b].push_back(i);
            }
        }
    }
    return out;
}

SubsetVector random_half(Rng& rng, std::size_t n) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    const std::size_t take = n / 2;
    for (std::size_t i = 0; i < take; ++i) {
        std::swap(order[i], order[i + bounded(rng, n - i)]);
    }
    SubsetVector x(n);
    for (std::size_t i = 0; i < take; ++i) {
        x.set(order[i]);
    }
    return x;
}

// Keeps the timed computations observable.
std::atomic<std::size_t> g_bench_sink{0};

template <typename F>
double time_once(F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

template <typename F>
BenchRecord time_algorithm(std::string name, const GenSpec& spec, std::size_t repetitions,
                           F&& body) {
    BenchRecord record;
    record.algorithm = std::move(name);
    record.objects = spec.objects;
    record.coverings = spec.coverings;
    record.repetitions = repetitions;
    body();  // warm-up, excluded
    record.times.reserve(repetitions);
    for (std::size_t r = 0; r < repetitions; ++r) {
        record.times.push_back(time_once(body));
    }
    fill_stats(record);
    return record;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void check_spec(const GenSpec& spec) {
    if (spec.blocks_per_covering < 1 || spec.objects < spec.blocks_per_covering) {
        throw std::invalid_argument(
            "GenSpec: need objects >= blocks_per_covering >= 1 (objects=" +
            std::to_string(spec.objects) +
            ", blocks=" + std::to_string(spec.blocks_per_covering) + ")");
    }
    if (spec.coverings < 1) {
        throw std::invalid_argument("GenSpec: need coverings >= 1");
    }
    if (!(spec.extra_membership_prob >= 0.0 && spec.extra_membership_prob <= 1.0)) {
        throw std::invalid_argument("GenSpec: extra_membership_prob must lie in [0, 1]");
    }
}

CoveringSystem generate_system(const GenSpec& spec) {
    check_spec(spec);
    Rng rng(spec.seed);
    CoveringSystem out;
    out.universe.labels.reserve(spec.objects);
    for (std::size_t i = 0; i < spec.objects; ++i) {
        out.universe.labels.push_back("x" + std::to_string(i + 1));
    }
    out.coverings.reserve(spec.coverings);
    for (std::size_t c = 0; c < spec.coverings; ++c) {
        out.coverings.push_back(generate_covering(rng, spec.objects,
                                                  spec.blocks_per_covering,
                                                  spec.extra_membership_prob,
                                                  "C" + std::to_string(c + 1)));
    }
    return out;
}

void fill_stats(BenchRecord& record) {
    if (record.times.empty()) {
        throw std::invalid_argument("fill_stats: no times recorded");
    }
    const std::size_t n = record.times.size();
    double sum = 0.0;
    for (const double t : record.times) {
        sum += t;
    }
    record.mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (const double t : record.times) {
        const double d = t - record.mean;
        sq += d * d;
    }
    record.variance = sq / static_cast<double>(n);
    record.repetitions = n;
}

std::vector<BenchRecord> run_benchmark(const GenSpec& spec, std::size_t repetitions,
                                       const std::optional<SubsetVector>& x) {
    check_spec(spec);
    if (repetitions == 0) {
        throw std::invalid_argument("run_benchmark: repetitions must be positive");
    }
    const CoveringSystem base = generate_system(spec);
    Rng rng(mix_seed(spec.seed));
    const Covering added =
        generate_covering(rng, spec.objects, spec.blocks_per_covering,
                          spec.extra_membership_prob,
                          "C" + std::to_string(spec.coverings + 1));
    const SubsetVector subset = x ? *x : random_half(rng, spec.objects);
    if (subset.size() != spec.objects) {
        throw ShapeError("run_benchmark: subset size does not match the universe");
    }

    CoveringSystem extended = base;
    extended.coverings.push_back(added);

    // Correctness gate before any timing.
    const ApproxPair nis = pipeline_nis(extended, subset);
    const ApproxPair is = pipeline_is(base, added, subset);
    if (nis != is) {
        throw std::runtime_error("run_benchmark: NIS and IS outputs diverge");
    }
    const ApproxPair nix = pipeline_nix(extended, subset);
    const ApproxPair ix = pipeline_ix(base, added, subset);
    if (nix != ix) {
        throw std::runtime_error("run_benchmark: NIX and IX outputs diverge");
    }

    // The incremental pipelines start from the base system's matrices, which
    // a maintained dynamic system already has on hand.
    const CharMatrix gamma_base = gamma(base);
    const CharMatrix pi_base = pi(base);

    std::vector<BenchRecord> records;
    records.push_back(time_algorithm("NIS", spec, repetitions, [&] {
        g_bench_sink += pipeline_nis(extended, subset).upper.count();
    }));
    records.push_back(time_algorithm("IS", spec, repetitions, [&] {
        g_bench_sink += pipeline_is(gamma_base, added, subset).upper.count();
    }));
    records.push_back(time_algorithm("NIX", spec, repetitions, [&] {
        g_bench_sink += pipeline_nix(extended, subset).upper.count();
    }));
    records.push_back(time_algorithm("IX", spec, repetitions, [&] {
        g_bench_sink += pipeline_ix(pi_base, added, subset).upper.count();
    }));
    return records;
}

void export_csv(const std::vector<BenchRecord>& records, std::ostream& out) {
    if (records.empty()) {
        throw std::invalid_argument("export_csv: no records");
    }
    out << "algorithm,n,m,rep,seconds\n";
    for (const BenchRecord& r : records) {
        for (std::size_t i = 0; i < r.times.size(); ++i) {
            out << r.algorithm << ',' << r.objects << ',' << r.coverings << ',' << (i + 1)
                << ',' << format_double(r.times[i]) << '\n';
        }
        out << r.algorithm << ',' << r.objects << ',' << r.coverings << ",mean,"
            << format_double(r.mean) << '\n';
        out << r.algorithm << ',' << r.objects << ',' << r.coverings << ",variance,"
            << format_double(r.variance) << '\n';
    }
}

void export_csv(const std::vector<BenchRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("export_csv: cannot open " + path);
    }
    export_csv(records, out);
}

std::vector<BenchRecord> import_csv(std::istream& in) {
    std::vector<BenchRecord> records;
    std::string line;
    if (!std::getline(in, line) || line != "algorithm,n,m,rep,seconds") {
        throw std::runtime_error("import_csv: missing header");
    }
    auto record_for = [&](const std::string& algorithm, std::size_t n,
                          std::size_t m) -> BenchRecord& {
        for (BenchRecord& r : records) {
            if (r.algorithm == algorithm && r.objects == n && r.coverings == m) {
                return r;
            }
        }
        records.push_back({algorithm, n, m, 0, {}, 0.0, 0.0});
        return records.back();
    };
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::stringstream ss(line);
        std::string algorithm, n_str, m_str, rep, seconds;
        if (!std::getline(ss, algorithm, ',') || !std::getline(ss, n_str, ',') ||
            !std::getline(ss, m_str, ',') || !std::getline(ss, rep, ',') ||
            !std::getline(ss, seconds)) {
            throw std::runtime_error("import_csv: malformed line " + std::to_string(line_no));
        }
        BenchRecord& r = record_for(algorithm, std::stoul(n_str), std::stoul(m_str));
        const double value = std::stod(seconds);
        if (rep == "mean") {
            r.mean = value;
        } else if (rep == "variance") {
            r.variance = value;
        } else {
            r.times.push_back(value);
            r.repetitions = r.times.size();
        }
    }
    return records;
}

}  // namespace covmat
