#include "tensorlog/selftest.hpp"

#include "tensorlog/compiler.hpp"
#include "tensorlog/datalog.hpp"
#include "tensorlog/evaluator.hpp"

#include <array>

namespace tensorlog {

FormulaCase random_formula_case(std::mt19937_64& rng, const RandomFormulaParams& params)
{
    Signature sig = random_signature(rng, params);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 5)(rng);
    const double density = std::uniform_real_distribution<double>(0.15, 0.85)(rng);
    FiniteModel m = random_model(rng, n, sig, density);
    Formula f = random_prenex_formula(rng, sig, params);
    return {std::move(m), std::move(f)};
}

SelftestReport run_selftest(const SelftestOptions& options)
{
    SelftestReport report;
    std::mt19937_64 rng(options.seed);

    for (std::size_t i = 0; i < options.formula_cases; ++i) {
        FormulaCase c = random_formula_case(rng);
        ++report.formula_cases;
        try {
            const int expected = ground_eval(c.model, c.formula);
            const int got = evaluate(c.model, compile(c.model, c.formula)).truth;
            if (got != expected) {
                ++report.formula_disagreements;
                report.failures.push_back("formula " + to_string(c.formula) + ": compiled " + std::to_string(got)
                                          + ", oracle " + std::to_string(expected));
            }
        } catch (const std::exception& e) {
            ++report.formula_disagreements;
            report.failures.push_back("formula " + to_string(c.formula) + ": " + e.what());
        }
    }

    static constexpr std::array<double, 4> densities{0.02, 0.1, 0.3, 0.5};
    for (std::size_t i = 0; i < options.tc_cases; ++i) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 50)(rng);
        const double p = densities[i % densities.size()];
        const AdjMatrix r1 = random_adjacency(n, p, rng);
        ++report.tc_cases;
        try {
            const AdjMatrix w = tc_warshall(r1).closure;
            if (tc_closed_form(r1).closure != w || tc_fixpoint(r1).closure != w) {
                ++report.tc_disagreements;
                report.failures.push_back("closure mismatch at n=" + std::to_string(n) + " p=" + std::to_string(p));
            }
        } catch (const std::exception& e) {
            ++report.tc_disagreements;
            report.failures.push_back(std::string("closure: ") + e.what());
        }
    }
    return report;
}

} // namespace tensorlog
