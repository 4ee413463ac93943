#pragma once

#include "tensorlog/matkit.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace tensorlog {

// Transitive closure of r1 as the least solution of
//
//     R2 = min1(R1 + R1 R2)
//
// i.e. the least model of  r2(X,Z) :- r1(X,Z).  r2(X,Z) :- r1(X,Y), r2(Y,Z).

enum class TcMethod { ClosedForm, Fixpoint, Warshall };

std::string to_string(TcMethod m);
/// Accepts "closed", "closed_form", "fixpoint", "warshall".
TcMethod parse_tc_method(const std::string& s);

struct TcConfig
{
    /// Entries of the resolvent above tau count as reachable.
    double tau = 1e-9;
    /// Defaults to N.
    std::optional<std::size_t> max_fixpoint_iters;
};

struct TcSolution
{
    AdjMatrix closure;
    TcMethod method = TcMethod::ClosedForm;
    double epsilon = 0.0;       // closed form only
    std::size_t iterations = 0; // fixpoint only
    double wall_ms = 0.0;
};

struct Resolvent
{
    /// X = (I - eps R1)^{-1} eps R1, before thresholding.
    Eigen::MatrixXd x;
    double epsilon = 0.0;
};

/// eps = 1 / (1 + ||R1||_inf) (maximum absolute row sum), then one dense LU
/// solve of (I - eps R1) X = eps R1.
Resolvent resolvent(const AdjMatrix& r1);

TcSolution tc_closed_form(const AdjMatrix& r1, const TcConfig& cfg = {});
/// Iterates R <- min1(R1 + R1 R) until stable. The first iterate from the
/// zero matrix is R1 itself, so iteration starts there; `iterations` counts
/// update steps including the one that confirms stability.
TcSolution tc_fixpoint(const AdjMatrix& r1, const TcConfig& cfg = {});
/// Boolean Warshall closure (paths of length >= 1).
TcSolution tc_warshall(const AdjMatrix& r1);

TcSolution solve_tc(const AdjMatrix& r1, TcMethod method, const TcConfig& cfg = {});

/// i.i.d. Bernoulli(p) entries, diagonal included.
AdjMatrix random_adjacency(std::size_t n, double p, std::mt19937_64& rng);

struct BenchRow
{
    std::size_t n = 0;
    double p_e = 0.0;
    TcMethod method = TcMethod::ClosedForm;
    double mean_ms = 0.0;
    double std_ms = 0.0; // sample standard deviation
    std::size_t runs = 0;
    std::uint64_t seed = 0;
};

struct BenchReport
{
    std::vector<BenchRow> rows; // one per (p_e, method), p_e-major
    /// All methods produced identical closures on every instance.
    bool all_agree = true;
    std::size_t instances = 0;
};

struct BenchOptions
{
    std::size_t n = 1000;
    std::vector<double> p_e{0.0001, 0.001, 0.01, 0.1, 1.0};
    std::size_t runs = 5;
    std::uint64_t seed = 0;
    std::vector<TcMethod> methods{TcMethod::ClosedForm};
    TcConfig config;
};

/// Instance r of density index k is drawn from seed_seq{seed, k, r}, so
/// reports are reproducible. Only the solve is timed.
BenchReport bench_tc(const BenchOptions& options);

} // namespace tensorlog
