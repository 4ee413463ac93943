#include "tensorlog/matkit.hpp"

#include "tensorlog/error.hpp"
#include "tensorlog/evaluator.hpp"

#include <cmath>

namespace tensorlog {

namespace {

void require_same_dim(const AdjMatrix& a, const AdjMatrix& b)
{
    if (a.rows() != a.cols() || b.rows() != b.cols())
        throw TensorError("adjacency matrices must be square");
    if (a.rows() != b.rows())
        throw TensorError("adjacency matrix dimension mismatch: " + std::to_string(a.rows()) + " vs "
                          + std::to_string(b.rows()));
}

void require_boolean(const AdjMatrix& a)
{
    if (!is_boolean(a))
        throw TensorError("adjacency matrix has non-Boolean entries");
}

std::size_t count_of(double trace)
{
    const double rounded = std::round(trace);
    if (rounded < 0 || std::abs(trace - rounded) >= truth_tolerance)
        throw EvalError("violation count " + std::to_string(trace) + " is not a non-negative integer");
    return static_cast<std::size_t>(rounded);
}

HornCheck horn_from(double trace)
{
    HornCheck h;
    h.violations = count_of(trace);
    h.truth = coerce_truth(1.0 - std::min(trace, 1.0));
    return h;
}

AdjMatrix negate(const AdjMatrix& r) { return AdjMatrix::Ones(r.rows(), r.cols()) - r; }

} // namespace

AdjMatrix adjacency(const FiniteModel& m, std::string_view predicate)
{
    const std::size_t arity = m.relation(predicate).arity;
    if (arity != 2)
        throw ArityError("predicate '" + std::string(predicate) + "' has arity " + std::to_string(arity)
                         + ", expected 2");
    return encode_relation(m, predicate).to_matrix();
}

bool is_boolean(const AdjMatrix& r)
{
    return (r.array() == 0.0 || r.array() == 1.0).all();
}

AdjMatrix compose(const AdjMatrix& r1, const AdjMatrix& r2)
{
    require_same_dim(r1, r2);
    return (r1 * r2).cwiseMin(1.0);
}

int exists_pair_overlap(const AdjMatrix& r1, const AdjMatrix& r2)
{
    require_same_dim(r1, r2);
    return coerce_truth(std::min((r1 * r2.transpose()).trace(), 1.0));
}

HornCheck horn_subset(const AdjMatrix& r1, const AdjMatrix& r2)
{
    require_same_dim(r1, r2);
    require_boolean(r1);
    require_boolean(r2);
    return horn_from((r1 * negate(r2).transpose()).trace());
}

HornCheck horn_transitivity(const AdjMatrix& r1, const AdjMatrix& r2, const AdjMatrix& r3)
{
    require_same_dim(r1, r2);
    require_same_dim(r1, r3);
    require_boolean(r1);
    require_boolean(r2);
    require_boolean(r3);
    return horn_from((compose(r1, r2) * negate(r3).transpose()).trace());
}

} // namespace tensorlog
