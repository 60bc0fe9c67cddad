#include <bms/bench.hpp>
#include <bms/generator.hpp>

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

namespace bms::bench {

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double seconds(F&& f) {
    const auto start = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const auto mid = xs.size() / 2;
    return xs.size() % 2 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
}

} // namespace

std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        return std::nullopt;
    }
    const auto n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0 || y[i] <= 0) return std::nullopt;
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y[i]) - my);
    }
    if (sxx < 1e-12) {
        return std::nullopt;
    }
    return sxy / sxx;
}

ScalingReport measure_scaling(std::span<const Index> sizes, double k_fraction, int reps, std::uint64_t seed) {
    if (reps < kMinRepetitions) {
        throw InputError("scaling measurement needs at least " + std::to_string(kMinRepetitions) + " repetitions");
    }
    if (!(k_fraction >= 0.0 && k_fraction <= 1.0)) {
        throw InputError("k fraction must be in [0, 1]");
    }
    std::vector<Index> sorted(sizes.begin(), sizes.end());
    std::sort(sorted.begin(), sorted.end());

    ScalingReport report;
    for (Index n : sorted) {
        const auto k = static_cast<Index>(std::floor(k_fraction * static_cast<double>(n)));
        const auto spec = MagicSpec::square(n, k);
        (void)generate(spec, seed);
        std::vector<double> times;
        for (int r = 0; r < reps; ++r) {
            times.push_back(seconds([&] { (void)generate(spec, seed + static_cast<std::uint64_t>(r) + 1); }));
        }
        const double med = median(times);
        report.entries.push_back({n, k, med, med > 0 ? 1.0 / med : 0.0});
    }

    std::vector<double> xs, ys;
    for (const auto& e : report.entries) {
        xs.push_back(static_cast<double>(e.n));
        ys.push_back(e.median_seconds);
    }
    report.exponent = loglog_slope(xs, ys);
    return report;
}

std::vector<Throughput> measure_batch_speedup(const MagicSpec& spec, Index count,
                                              std::span<const unsigned> worker_list, std::uint64_t seed) {
    for (unsigned w : worker_list) {
        if (w == 0 || count < static_cast<Index>(w)) {
            throw InputError("each worker count must be in [1, count]");
        }
    }
    std::vector<BinaryMatrix> reference;
    for (unsigned w : worker_list) {
        auto batch = generate_batch(spec, {count, seed, w});
        if (reference.empty()) {
            reference = std::move(batch);
        } else if (batch != reference) {
            throw InvariantViolation("batch output depends on worker count");
        }
    }

    std::vector<Throughput> out;
    for (unsigned w : worker_list) {
        std::vector<double> times;
        for (int r = 0; r < 3; ++r) {
            times.push_back(seconds([&] { (void)generate_batch(spec, {count, seed, w}); }));
        }
        const double med = median(times);
        out.push_back({w, med > 0 ? static_cast<double>(count) / med : 0.0});
    }
    return out;
}

void write_csv(std::ostream& out, const ScalingReport& report) {
    out << "n,k,median_seconds,matrices_per_second\n";
    for (const auto& e : report.entries) {
        out << e.n << ',' << e.k << ',' << e.median_seconds << ',' << e.matrices_per_second << '\n';
    }
    if (report.exponent) {
        out << "# exponent=" << *report.exponent << '\n';
    }
}

void write_json(std::ostream& out, const ScalingReport& report) {
    nlohmann::json doc;
    doc["entries"] = nlohmann::json::array();
    for (const auto& e : report.entries) {
        doc["entries"].push_back({{"n", e.n},
                                  {"k", e.k},
                                  {"median_seconds", e.median_seconds},
                                  {"matrices_per_second", e.matrices_per_second}});
    }
    doc["exponent"] = report.exponent ? nlohmann::json(*report.exponent) : nlohmann::json(nullptr);
    out << doc.dump(2) << '\n';
}

} // namespace bms::bench
