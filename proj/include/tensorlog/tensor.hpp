#pragma once

#include "tensorlog/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace tensorlog {

/// Order-k array with every mode of size N, stored row-major (last index
/// fastest). Order 0 is a scalar.
template <class Scalar>
class BasicTensor
{
public:
    using scalar_t = Scalar;
    using vec_t = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using rowmat_t = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    using mat_t = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    BasicTensor() : BasicTensor(0, 1) {}

    BasicTensor(std::size_t order, std::size_t dim)
        : order_(order), dim_(dim), data_(vec_t::Zero(static_cast<Eigen::Index>(ipow(dim, order))))
    {
        if (dim == 0)
            throw TensorError("tensor dimension must be positive");
    }

    BasicTensor(std::size_t order, std::size_t dim, vec_t data)
        : order_(order), dim_(dim), data_(std::move(data))
    {
        if (dim == 0)
            throw TensorError("tensor dimension must be positive");
        if (static_cast<std::size_t>(data_.size()) != ipow(dim, order))
            throw TensorError("tensor data length " + std::to_string(data_.size()) + " != " + std::to_string(dim)
                              + "^" + std::to_string(order));
    }

    static BasicTensor scalar(Scalar v, std::size_t dim = 1)
    {
        BasicTensor t(0, dim);
        t.data_[0] = v;
        return t;
    }

    static BasicTensor zeros(std::size_t order, std::size_t dim) { return BasicTensor(order, dim); }

    static BasicTensor ones(std::size_t order, std::size_t dim)
    {
        BasicTensor t(order, dim);
        t.data_.setOnes();
        return t;
    }

    /// Standard basis vector e_i (0-based i).
    static BasicTensor one_hot(std::size_t dim, std::size_t i)
    {
        BasicTensor t(1, dim);
        t.data_[static_cast<Eigen::Index>(i)] = Scalar(1);
        return t;
    }

    template <class Derived>
    static BasicTensor from_matrix(const Eigen::MatrixBase<Derived>& m)
    {
        if (m.rows() != m.cols() || m.rows() == 0)
            throw TensorError("matrix must be square and non-empty");
        rowmat_t rm = m;
        return BasicTensor(2, static_cast<std::size_t>(m.rows()),
                           Eigen::Map<const vec_t>(rm.data(), rm.size()));
    }

    static BasicTensor from_values(std::size_t order, std::size_t dim, std::initializer_list<Scalar> values)
    {
        vec_t v(static_cast<Eigen::Index>(values.size()));
        std::copy(values.begin(), values.end(), v.data());
        return BasicTensor(order, dim, std::move(v));
    }

    std::size_t order() const { return order_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return static_cast<std::size_t>(data_.size()); }
    const vec_t& data() const { return data_; }
    vec_t& data() { return data_; }

    std::size_t offset(std::span<const std::size_t> idx) const
    {
        if (idx.size() != order_)
            throw TensorError("index arity " + std::to_string(idx.size()) + " != order " + std::to_string(order_));
        std::size_t off = 0;
        for (std::size_t i : idx) {
            if (i >= dim_)
                throw TensorError("index " + std::to_string(i) + " out of range");
            off = off * dim_ + i;
        }
        return off;
    }

    Scalar operator()(std::span<const std::size_t> idx) const { return data_[static_cast<Eigen::Index>(offset(idx))]; }
    Scalar& operator()(std::span<const std::size_t> idx) { return data_[static_cast<Eigen::Index>(offset(idx))]; }
    Scalar at(std::initializer_list<std::size_t> idx) const { return (*this)(std::span(idx.begin(), idx.size())); }
    Scalar& at(std::initializer_list<std::size_t> idx) { return (*this)(std::span(idx.begin(), idx.size())); }

    Scalar value() const
    {
        if (order_ != 0)
            throw TensorError("tensor of order " + std::to_string(order_) + " is not a scalar");
        return data_[0];
    }

    Eigen::Map<const rowmat_t> as_matrix() const
    {
        if (order_ != 2)
            throw TensorError("tensor of order " + std::to_string(order_) + " is not a matrix");
        auto n = static_cast<Eigen::Index>(dim_);
        return Eigen::Map<const rowmat_t>(data_.data(), n, n);
    }

    mat_t to_matrix() const { return as_matrix(); }

    friend bool operator==(const BasicTensor& a, const BasicTensor& b)
    {
        return a.order_ == b.order_ && a.dim_ == b.dim_ && a.data_ == b.data_;
    }

    static std::size_t ipow(std::size_t base, std::size_t exp)
    {
        std::size_t r = 1;
        for (std::size_t i = 0; i < exp; ++i) {
            if (base != 0 && r > std::numeric_limits<std::size_t>::max() / base)
                throw TensorError("tensor of " + std::to_string(base) + "^" + std::to_string(exp)
                                  + " entries is too large");
            r *= base;
        }
        return r;
    }

private:
    std::size_t order_;
    std::size_t dim_;
    vec_t data_;
};

using Tensor = BasicTensor<double>;

/// Calls fn(index) for every multi-index of an order-`order` cube in
/// row-major order.
template <class Fn>
void for_each_index(std::size_t order, std::size_t dim, Fn&& fn)
{
    std::vector<std::size_t> idx(order, 0);
    const std::size_t total = BasicTensor<double>::ipow(dim, order);
    for (std::size_t n = 0; n < total; ++n) {
        fn(std::span<const std::size_t>(idx));
        for (std::size_t k = order; k-- > 0;) {
            if (++idx[k] < dim)
                break;
            idx[k] = 0;
        }
    }
}

/// Result mode i is mode perm[i] of `a`.
template <class Scalar>
BasicTensor<Scalar> permute(const BasicTensor<Scalar>& a, std::span<const std::size_t> perm)
{
    const std::size_t p = a.order();
    if (perm.size() != p)
        throw TensorError("permutation length does not match tensor order");
    std::vector<bool> seen(p, false);
    for (std::size_t m : perm) {
        if (m >= p || seen[m])
            throw TensorError("invalid mode permutation");
        seen[m] = true;
    }
    if (std::is_sorted(perm.begin(), perm.end()))
        return a;

    std::vector<std::size_t> stride(p, 1);
    for (std::size_t k = p; k-- > 1;)
        stride[k - 1] = stride[k] * a.dim();

    BasicTensor<Scalar> out(p, a.dim());
    std::size_t n = 0;
    for_each_index(p, a.dim(), [&](std::span<const std::size_t> idx) {
        std::size_t src = 0;
        for (std::size_t i = 0; i < p; ++i)
            src += idx[i] * stride[perm[i]];
        out.data()[static_cast<Eigen::Index>(n++)] = a.data()[static_cast<Eigen::Index>(src)];
    });
    return out;
}

/// Moves mode `from` to position `to`, keeping the other modes in order.
template <class Scalar>
BasicTensor<Scalar> move_mode(const BasicTensor<Scalar>& a, std::size_t from, std::size_t to)
{
    std::vector<std::size_t> perm;
    for (std::size_t i = 0; i < a.order(); ++i)
        if (i != from)
            perm.push_back(i);
    perm.insert(perm.begin() + static_cast<std::ptrdiff_t>(to), from);
    return permute(a, perm);
}

/// Mode-(n,m) contracted product with 0-based modes: sums mode n of `a`
/// against mode m of `b`. Result modes are a's remaining modes followed by
/// b's remaining modes.
template <class Scalar>
BasicTensor<Scalar> contract(const BasicTensor<Scalar>& a, std::size_t n, const BasicTensor<Scalar>& b, std::size_t m)
{
    if (n >= a.order() || m >= b.order())
        throw TensorError("contraction mode out of range");
    if (a.dim() != b.dim())
        throw TensorError("contraction dimension mismatch: " + std::to_string(a.dim()) + " vs "
                          + std::to_string(b.dim()));
    using rowmat_t = typename BasicTensor<Scalar>::rowmat_t;

    const auto N = static_cast<Eigen::Index>(a.dim());
    const BasicTensor<Scalar> lhs = move_mode(a, n, a.order() - 1);
    const BasicTensor<Scalar> rhs = move_mode(b, m, 0);
    Eigen::Map<const rowmat_t> A(lhs.data().data(), lhs.data().size() / N, N);
    Eigen::Map<const rowmat_t> B(rhs.data().data(), N, rhs.data().size() / N);

    BasicTensor<Scalar> out(a.order() + b.order() - 2, a.dim());
    Eigen::Map<rowmat_t> C(out.data().data(), A.rows(), B.cols());
    C.noalias() = A * B;
    return out;
}

/// Outer product; either operand may be a scalar of any dimension.
template <class Scalar>
BasicTensor<Scalar> outer(const BasicTensor<Scalar>& a, const BasicTensor<Scalar>& b)
{
    if (a.order() > 0 && b.order() > 0 && a.dim() != b.dim())
        throw TensorError("outer product dimension mismatch");
    const std::size_t dim = a.order() > 0 ? a.dim() : b.dim();
    using rowmat_t = typename BasicTensor<Scalar>::rowmat_t;
    BasicTensor<Scalar> out(a.order() + b.order(), dim);
    Eigen::Map<rowmat_t> C(out.data().data(), a.data().size(), b.data().size());
    C.noalias() = a.data() * b.data().transpose();
    return out;
}

/// Componentwise min(x, 1).
template <class Scalar>
BasicTensor<Scalar> min1(BasicTensor<Scalar> a)
{
    a.data() = a.data().cwiseMin(Scalar(1));
    return a;
}

inline constexpr double boolean_tolerance = 1e-9;

template <class Scalar>
bool in_unit_interval(const BasicTensor<Scalar>& a, double tol = boolean_tolerance)
{
    if (a.size() == 0)
        return true;
    return a.data().minCoeff() >= Scalar(-tol) && a.data().maxCoeff() <= Scalar(1 + tol);
}

template <class Scalar>
bool is_boolean(const BasicTensor<Scalar>& a, double tol = boolean_tolerance)
{
    return std::all_of(a.data().begin(), a.data().end(), [tol](Scalar x) {
        return std::abs(x) <= tol || std::abs(x - Scalar(1)) <= tol;
    });
}

/// All-ones of the same shape minus `a`. Entries must lie in [0,1].
template <class Scalar>
BasicTensor<Scalar> complement(BasicTensor<Scalar> a)
{
    if (!in_unit_interval(a))
        throw TensorError("complement of a tensor with entries outside [0,1]");
    a.data() = Scalar(1) - a.data().array();
    return a;
}

/// Order-M tensor sum_k e_k o ... o e_k: one exactly where all M indices agree.
template <class Scalar = double>
BasicTensor<Scalar> quantifier_tensor(std::size_t arity, std::size_t dim)
{
    if (arity == 0)
        throw TensorError("quantifier tensor arity must be positive");
    BasicTensor<Scalar> q(arity, dim);
    std::size_t step = 0;
    for (std::size_t i = 0; i < arity; ++i)
        step = step * dim + 1;
    for (std::size_t k = 0; k < dim; ++k)
        q.data()[static_cast<Eigen::Index>(k * step)] = Scalar(1);
    return q;
}

/// Generalized diagonal: out[j_0..j_{r-1}] = a[j_{map[0]}, ..., j_{map[p-1]}].
/// A mode of `out` that no entry of `map` names is broadcast.
template <class Scalar>
BasicTensor<Scalar> generalized_diagonal(const BasicTensor<Scalar>& a, std::span<const std::size_t> map,
                                         std::size_t out_order)
{
    if (map.size() != a.order())
        throw TensorError("merge map length does not match tensor order");
    for (std::size_t m : map)
        if (m >= out_order)
            throw TensorError("merge map entry out of range");

    std::vector<std::size_t> stride(a.order(), 1);
    for (std::size_t k = a.order(); k-- > 1;)
        stride[k - 1] = stride[k] * a.dim();

    BasicTensor<Scalar> out(out_order, a.dim());
    std::size_t n = 0;
    for_each_index(out_order, a.dim(), [&](std::span<const std::size_t> idx) {
        std::size_t src = 0;
        for (std::size_t i = 0; i < map.size(); ++i)
            src += idx[map[i]] * stride[i];
        out.data()[static_cast<Eigen::Index>(n++)] = a.data()[static_cast<Eigen::Index>(src)];
    });
    return out;
}

template <class Scalar>
Scalar max_abs_diff(const BasicTensor<Scalar>& a, const BasicTensor<Scalar>& b)
{
    if (a.order() != b.order() || a.size() != b.size())
        throw TensorError("shape mismatch");
    if (a.size() == 0)
        return Scalar(0);
    return (a.data() - b.data()).cwiseAbs().maxCoeff();
}

} // namespace tensorlog
