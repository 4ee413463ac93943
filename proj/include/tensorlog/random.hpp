#pragma once

#include "tensorlog/formula.hpp"
#include "tensorlog/model.hpp"

#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace tensorlog {

struct Signature
{
    std::vector<std::pair<std::string, std::size_t>> predicates; // name, arity
};

struct RandomFormulaParams
{
    std::size_t max_depth = 3;    // quantifier prefix length
    std::size_t max_groups = 3;   // top-level groups in the matrix
    std::size_t max_literals = 3; // literals per group
    std::size_t max_arity = 3;
    std::size_t num_predicates = 4;
    double constant_prob = 0.1;   // chance an argument is a constant
    double negation_prob = 0.35;
    double not_group_prob = 0.1;  // chance a whole group sits under Not
    double reuse_var_prob = 0.1;  // chance a quantifier rebinds an outer variable
    std::vector<std::string> constants{"e1", "e2"};
};

Signature random_signature(std::mt19937_64& rng, const RandomFormulaParams& params);

/// Constants e1..eN; each tuple of each predicate is present with
/// probability `density`.
FiniteModel random_model(std::mt19937_64& rng, std::size_t n, const Signature& sig, double density);

/// Closed prenex formula over `sig`.
Formula random_prenex_formula(std::mt19937_64& rng, const Signature& sig, const RandomFormulaParams& params);

/// Quantifier-free formula over the given variables (for normal-form tests).
Formula random_matrix(std::mt19937_64& rng, const Signature& sig, const std::vector<std::string>& vars,
                      const RandomFormulaParams& params);

} // namespace tensorlog
