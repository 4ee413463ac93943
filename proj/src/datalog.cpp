#include "tensorlog/datalog.hpp"

#include "tensorlog/error.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

namespace tensorlog {

namespace {

using clock_type = std::chrono::steady_clock;

double elapsed_ms(clock_type::time_point start)
{
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

void require_square_boolean(const AdjMatrix& r)
{
    if (r.rows() != r.cols() || r.rows() == 0)
        throw TensorError("relation matrix must be square and non-empty");
    if (!is_boolean(r))
        throw TensorError("relation matrix has non-Boolean entries");
}

} // namespace

std::string to_string(TcMethod m)
{
    switch (m) {
    case TcMethod::ClosedForm: return "closed_form";
    case TcMethod::Fixpoint: return "fixpoint";
    case TcMethod::Warshall: return "warshall";
    }
    return "?";
}

TcMethod parse_tc_method(const std::string& s)
{
    if (s == "closed" || s == "closed_form")
        return TcMethod::ClosedForm;
    if (s == "fixpoint")
        return TcMethod::Fixpoint;
    if (s == "warshall")
        return TcMethod::Warshall;
    throw Error("unknown method '" + s + "' (closed, fixpoint, warshall)");
}

Resolvent resolvent(const AdjMatrix& r1)
{
    require_square_boolean(r1);
    const double norm_inf = r1.cwiseAbs().rowwise().sum().maxCoeff();
    Resolvent out;
    out.epsilon = 1.0 / (1.0 + norm_inf);
    // eps ||R1|| < 1, so sum_k (eps R1)^k converges and I - eps R1 is invertible.
    if (!(out.epsilon * norm_inf < 1.0))
        throw SolverError("spectral guard failed: eps * ||R1||_inf >= 1");

    const auto n = r1.rows();
    const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - out.epsilon * r1;
    out.x = a.partialPivLu().solve(out.epsilon * r1);
    if (!out.x.allFinite())
        throw SolverError("resolvent solve produced non-finite entries");
    return out;
}

TcSolution tc_closed_form(const AdjMatrix& r1, const TcConfig& cfg)
{
    if (!(cfg.tau > 0.0))
        throw Error("threshold tau must be positive");
    const auto start = clock_type::now();
    Resolvent res = resolvent(r1);
    TcSolution s;
    s.closure = (res.x.array() > cfg.tau).cast<double>();
    s.method = TcMethod::ClosedForm;
    s.epsilon = res.epsilon;
    s.wall_ms = elapsed_ms(start);
    return s;
}

TcSolution tc_fixpoint(const AdjMatrix& r1, const TcConfig& cfg)
{
    require_square_boolean(r1);
    const auto start = clock_type::now();
    const std::size_t limit = cfg.max_fixpoint_iters.value_or(static_cast<std::size_t>(r1.rows()));

    TcSolution s;
    s.method = TcMethod::Fixpoint;
    AdjMatrix r = r1;
    for (;;) {
        if (s.iterations == limit)
            throw SolverError("fixpoint did not converge within " + std::to_string(limit) + " iterations");
        ++s.iterations;
        AdjMatrix next = (r1 + r1 * r).cwiseMin(1.0);
        if (next == r)
            break;
        r = std::move(next);
    }
    s.closure = std::move(r);
    s.wall_ms = elapsed_ms(start);
    return s;
}

TcSolution tc_warshall(const AdjMatrix& r1)
{
    require_square_boolean(r1);
    const auto start = clock_type::now();
    const auto n = static_cast<std::size_t>(r1.rows());
    std::vector<char> c(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            c[i * n + j] = r1(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0.0;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (!c[i * n + k])
                continue;
            for (std::size_t j = 0; j < n; ++j)
                c[i * n + j] |= c[k * n + j];
        }

    TcSolution s;
    s.method = TcMethod::Warshall;
    s.closure = AdjMatrix::Zero(r1.rows(), r1.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (c[i * n + j])
                s.closure(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
    s.wall_ms = elapsed_ms(start);
    return s;
}

TcSolution solve_tc(const AdjMatrix& r1, TcMethod method, const TcConfig& cfg)
{
    switch (method) {
    case TcMethod::ClosedForm: return tc_closed_form(r1, cfg);
    case TcMethod::Fixpoint: return tc_fixpoint(r1, cfg);
    case TcMethod::Warshall: return tc_warshall(r1);
    }
    throw Error("unknown method");
}

AdjMatrix random_adjacency(std::size_t n, double p, std::mt19937_64& rng)
{
    if (p < 0.0 || p > 1.0)
        throw Error("edge probability must lie in [0,1]");
    std::bernoulli_distribution coin(p);
    const auto dim = static_cast<Eigen::Index>(n);
    AdjMatrix r(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            r(i, j) = coin(rng) ? 1.0 : 0.0;
    return r;
}

BenchReport bench_tc(const BenchOptions& options)
{
    if (options.n == 0)
        throw Error("bench dimension must be positive");
    if (options.runs == 0)
        throw Error("bench needs at least one run");
    if (options.methods.empty())
        throw Error("bench needs at least one method");

    BenchReport report;
    for (std::size_t k = 0; k < options.p_e.size(); ++k) {
        const double p = options.p_e[k];
        std::vector<std::vector<double>> times(options.methods.size());
        for (std::size_t r = 0; r < options.runs; ++r) {
            std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                              static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(r)};
            std::mt19937_64 rng(seq);
            const AdjMatrix r1 = random_adjacency(options.n, p, rng);
            ++report.instances;

            std::optional<AdjMatrix> reference;
            for (std::size_t mi = 0; mi < options.methods.size(); ++mi) {
                const auto start = clock_type::now();
                TcSolution s = solve_tc(r1, options.methods[mi], options.config);
                times[mi].push_back(elapsed_ms(start));
                if (!reference)
                    reference = std::move(s.closure);
                else if (s.closure != *reference)
                    report.all_agree = false;
            }
        }
        for (std::size_t mi = 0; mi < options.methods.size(); ++mi) {
            const auto& t = times[mi];
            const double mean = std::accumulate(t.begin(), t.end(), 0.0) / static_cast<double>(t.size());
            double var = 0.0;
            for (double x : t)
                var += (x - mean) * (x - mean);
            var = t.size() > 1 ? var / static_cast<double>(t.size() - 1) : 0.0;
            report.rows.push_back({options.n, p, options.methods[mi], mean, std::sqrt(var), options.runs, options.seed});
        }
    }
    return report;
}

} // namespace tensorlog
