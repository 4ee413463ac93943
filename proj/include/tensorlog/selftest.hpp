#pragma once

#include "tensorlog/formula.hpp"
#include "tensorlog/model.hpp"
#include "tensorlog/random.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace tensorlog {

struct FormulaCase
{
    FiniteModel model;
    Formula formula;
};

/// N in [2,5], quantifier depth <= 3, arity <= 3.
FormulaCase random_formula_case(std::mt19937_64& rng, const RandomFormulaParams& params = {});

struct SelftestOptions
{
    std::uint64_t seed = 1;
    std::size_t formula_cases = 200;
    std::size_t tc_cases = 50;
};

struct SelftestReport
{
    std::size_t formula_cases = 0;
    std::size_t formula_disagreements = 0;
    std::size_t tc_cases = 0;
    std::size_t tc_disagreements = 0;
    std::vector<std::string> failures;

    bool ok() const { return formula_disagreements == 0 && tc_disagreements == 0; }
};

/// Compiled evaluation against the grounded oracle on random formulas, and
/// the three closure methods against each other on random graphs.
SelftestReport run_selftest(const SelftestOptions& options);

} // namespace tensorlog
