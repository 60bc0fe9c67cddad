#include <bms/bench.hpp>
#include <bms/cli.hpp>
#include <bms/generator.hpp>
#include <bms/io.hpp>
#include <bms/oracle.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>

namespace bms::cli {

namespace {

/// Dimension flags shared by gen and count: either -n/-k for squares or
/// -m/-n with --row-sum/--col-sum.
struct DimensionArgs {
    std::optional<Index> rows;
    Index cols = 0;
    std::optional<Index> k;
    std::optional<Index> row_sum;
    std::optional<Index> col_sum;

    void attach(CLI::App& cmd) {
        cmd.add_option("-m,--rows", rows, "row count (defaults to the column count)");
        cmd.add_option("-n,--cols", cols, "column count, or the size of a square")->required();
        cmd.add_option("-k", k, "common row and column sum of a square");
        cmd.add_option("--row-sum", row_sum, "sum of every row (a)");
        cmd.add_option("--col-sum", col_sum, "sum of every column (b)");
    }

    MagicSpec resolve() const {
        const Index m = rows.value_or(cols);
        if (k) {
            if (row_sum || col_sum) {
                throw CLI::ValidationError("-k cannot be combined with --row-sum/--col-sum");
            }
            if (m != cols) {
                throw CLI::ValidationError("-k needs a square matrix (-m equal to -n)");
            }
            return MagicSpec::square(cols, *k);
        }
        if (!row_sum || !col_sum) {
            throw CLI::ValidationError("give -k, or both --row-sum and --col-sum");
        }
        return MagicSpec(m, cols, *row_sum, *col_sum);
    }
};

class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw std::runtime_error("cannot open '" + path + "' for writing");
            }
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

std::string read_all(const std::string& path, std::istream& in) {
    if (path.empty() || path == "-") {
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct GenArgs {
    DimensionArgs dims;
    std::optional<std::uint64_t> seed;
    Index count = 1;
    std::string format = "dense";
    std::string output = "-";
    unsigned workers = 0;
};

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
    const auto spec = args.dims.resolve();
    const auto format = io::parse_format(args.format);
    if (args.count < 0) {
        throw CLI::ValidationError("--count must be non-negative");
    }
    const std::uint64_t seed = args.seed.value_or(entropy_seed());
    err << "seed: " << seed << '\n';

    std::vector<BinaryMatrix> matrices;
    std::vector<std::uint64_t> seeds;
    if (args.count == 1) {
        matrices.push_back(generate(spec, seed));
        seeds.push_back(seed);
    } else {
        matrices = generate_batch(spec, {args.count, seed, args.workers});
        for (Index i = 0; i < args.count; ++i) {
            seeds.push_back(derive_seed(seed, static_cast<std::uint64_t>(i)));
        }
    }
    OutputTarget target(args.output, out);
    io::write(target.get(), matrices, format, spec, seeds);
    return kOk;
}

struct CheckArgs {
    std::string input = "-";
    std::string format = "dense";
    std::optional<Index> row_sum;
    std::optional<Index> col_sum;
};

int cmd_check(const CheckArgs& args, std::istream& in, std::ostream& out) {
    const auto format = io::parse_format(args.format);
    const auto text = read_all(args.input, in);
    const auto matrices = io::parse(text, format);

    bool all_valid = true;
    for (std::size_t idx = 0; idx < matrices.size(); ++idx) {
        const auto& matrix = matrices[idx];
        const Index a = args.row_sum.value_or(matrix.row_sum(0));
        const Index b = args.col_sum.value_or(matrix.col_sums().front());
        const auto report = validate(matrix, MagicSpec(matrix.rows(), matrix.cols(), a, b));
        if (matrices.size() > 1) {
            out << "matrix " << idx << ": ";
        }
        if (report.is_valid) {
            out << "VALID " << matrix.rows() << 'x' << matrix.cols() << " a=" << a << " b=" << b << '\n';
        } else {
            all_valid = false;
            const auto& v = *report.first_violation;
            out << "INVALID " << (v.axis == Axis::row ? "row " : "column ") << v.index << ": sum "
                << v.observed << ", expected " << v.expected << '\n';
        }
    }
    return all_valid ? kOk : kInvalidMatrix;
}

int cmd_feasible(Index rows, Index cols, std::ostream& out) {
    for (const auto& [a, b] : feasible_pairs(rows, cols)) {
        out << a << ' ' << b << '\n';
    }
    return kOk;
}

int cmd_count(const DimensionArgs& dims, std::ostream& out) {
    const auto spec = dims.resolve();
    out << oracle::enumerate(spec, 0).count << '\n';
    return kOk;
}

struct BenchArgs {
    std::vector<Index> sizes{500, 1000, 2000};
    double k_fraction = 0.5;
    int reps = bench::kMinRepetitions;
    std::uint64_t seed = 1;
    std::string report = "-";
    std::string json_report;
    std::vector<unsigned> workers;
    Index batch_count = 64;
    Index batch_n = 512;
};

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
    for (Index n : args.sizes) {
        if (n < 1) throw CLI::ValidationError("sizes must be positive");
    }
    const auto report = bench::measure_scaling(args.sizes, args.k_fraction, args.reps, args.seed);
    {
        OutputTarget target(args.report, out);
        bench::write_csv(target.get(), report);
    }
    if (!args.json_report.empty()) {
        OutputTarget target(args.json_report, out);
        bench::write_json(target.get(), report);
    }
    if (!args.workers.empty()) {
        const auto spec = MagicSpec::square(args.batch_n, args.batch_n / 2);
        err << "batch throughput, n=" << spec.cols() << " k=" << spec.row_sum() << " count=" << args.batch_count
            << '\n';
        out << "workers,matrices_per_second\n";
        for (const auto& t : bench::measure_batch_speedup(spec, args.batch_count, args.workers, args.seed)) {
            out << t.workers << ',' << t.matrices_per_second << '\n';
        }
    }
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Random binary matrices with constant row and column sums", "bms"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate random matrices");
    gen.dims.attach(*gen_cmd);
    gen_cmd->add_option("--seed", gen.seed, "64-bit seed (default: drawn from system entropy)");
    gen_cmd->add_option("--count", gen.count, "number of matrices");
    gen_cmd->add_option("--format", gen.format, "dense, coords, pbm or json");
    gen_cmd->add_option("-o,--output", gen.output, "output path ('-' for stdout)");
    gen_cmd->add_option("--workers", gen.workers, "batch worker threads (0 = all cores)");

    CheckArgs check;
    auto* check_cmd = app.add_subcommand("check", "verify that every row and every column has the same sum");
    check_cmd->add_option("input,-i,--input", check.input, "input path ('-' for stdin)");
    check_cmd->add_option("--format", check.format, "dense, coords, pbm or json");
    check_cmd->add_option("--row-sum", check.row_sum, "expected row sum (default: inferred)");
    check_cmd->add_option("--col-sum", check.col_sum, "expected column sum (default: inferred)");

    Index feas_rows = 0;
    Index feas_cols = 0;
    auto* feas_cmd = app.add_subcommand("feasible", "list every feasible (row sum, column sum) pair");
    feas_cmd->add_option("-m,--rows", feas_rows, "row count")->required();
    feas_cmd->add_option("-n,--cols", feas_cols, "column count")->required();

    DimensionArgs count_dims;
    auto* count_cmd = app.add_subcommand("count", "count matrices exhaustively (at most 6x6)");
    count_dims.attach(*count_cmd);

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "measure generation time against matrix size");
    bench_cmd->add_option("--sizes", bench_args.sizes, "comma-separated sizes n")->delimiter(',');
    bench_cmd->add_option("--k-fraction", bench_args.k_fraction, "k as a fraction of n");
    bench_cmd->add_option("--reps", bench_args.reps, "timed repetitions per size (>= 5)");
    bench_cmd->add_option("--seed", bench_args.seed, "seed for timed runs");
    bench_cmd->add_option("--report", bench_args.report, "CSV report path ('-' for stdout)");
    bench_cmd->add_option("--json", bench_args.json_report, "optional JSON report path");
    bench_cmd->add_option("--workers", bench_args.workers, "worker counts for batch throughput, e.g. 1,4")
        ->delimiter(',');
    bench_cmd->add_option("--batch-count", bench_args.batch_count, "matrices per batch timing");
    bench_cmd->add_option("--batch-n", bench_args.batch_n, "square size for batch timing");

    std::vector<const char*> argv{"bms"};
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen, out, err);
        if (*check_cmd) return cmd_check(check, in, out);
        if (*feas_cmd) return cmd_feasible(feas_rows, feas_cols, out);
        if (*count_cmd) return cmd_count(count_dims, out);
        if (*bench_cmd) return cmd_bench(bench_args, out, err);
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const FeasibilityError& e) {
        err << "error: " << e.what() << '\n';
        return kDomainFailure;
    } catch (const SizeError& e) {
        err << "error: " << e.what() << '\n';
        return kDomainFailure;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kParse;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDomainFailure;
    }
    return kUsage;
}

} // namespace bms::cli
