#pragma once

#include "tensorlog/compiler.hpp"
#include "tensorlog/model.hpp"
#include "tensorlog/tensor.hpp"

#include <cstddef>
#include <map>
#include <string>

namespace tensorlog {

struct EvalOptions
{
    bool keep_intermediates = false;
    /// Build Q^{E,M} explicitly and contract against it. The default never
    /// materializes Q and gives the same tensor.
    bool materialize_quantifiers = false;
};

struct EvalStats
{
    std::size_t contractions = 0;
    std::size_t peak_order = 0;
    double wall_ms = 0.0;
};

struct EvalResult
{
    int truth = 0;
    double raw = 0.0;
    std::map<std::string, Tensor> intermediates;
    EvalStats stats;
};

/// |raw - 1| < tol is true, |raw| < tol is false, anything else throws EvalError.
inline constexpr double truth_tolerance = 1e-6;
int coerce_truth(double raw);

using TensorEnv = std::map<std::string, Tensor, std::less<>>;

/// Runs the left-associated contraction chain of one definition with
/// repeated free variables merged, then min1 and the universal complement.
Tensor evaluate_definition(const TensorDefinition& def, const TensorEnv& env, const EvalOptions& options = {},
                           EvalStats* stats = nullptr);

double evaluate_root(const RootExpr& root, const TensorEnv& env);

/// Evaluates a compiled program over the model's relation tensors.
EvalResult evaluate(const FiniteModel& m, const TensorProgram& p, const EvalOptions& options = {});

} // namespace tensorlog
