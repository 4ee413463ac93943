#pragma once

#include "tensorlog/model.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <string_view>

namespace tensorlog {

/// Adjacency matrix of a binary relation: entry (i,j) is r(e_i, e_j).
using AdjMatrix = Eigen::MatrixXd;

AdjMatrix adjacency(const FiniteModel& m, std::string_view predicate);
bool is_boolean(const AdjMatrix& r);

/// min1(R1 R2): the relation  some Y r1(X,Y) & r2(Y,Z).
AdjMatrix compose(const AdjMatrix& r1, const AdjMatrix& r2);

/// min1(tr(R1 R2^T)): truth of  some X some Y r1(X,Y) & r2(X,Y).
int exists_pair_overlap(const AdjMatrix& r1, const AdjMatrix& r2);

struct HornCheck
{
    int truth = 1;
    std::size_t violations = 0;
};

/// all X all Y r1(X,Y) -> r2(X,Y). violations = tr(R1 (not R2)^T).
HornCheck horn_subset(const AdjMatrix& r1, const AdjMatrix& r2);

/// all X all Z (some Y r1(X,Y) & r2(Y,Z)) -> r3(X,Z).
/// violations = tr(min1(R1 R2) (not R3)^T).
HornCheck horn_transitivity(const AdjMatrix& r1, const AdjMatrix& r2, const AdjMatrix& r3);

} // namespace tensorlog
