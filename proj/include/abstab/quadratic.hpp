#pragma once

#include <functional>

#include "abstab/hom.hpp"

namespace abstab {

/// A quadratic function xi(g) = e^{i pi (g^T M g + C^T g + 2 v^T g)} in
/// normal form: M is a symmetric rational matrix representing a homomorphism
/// G -> G-bullet, v is a bullet-group element, and C(i) = M(i,i) d_i is the
/// derived integer vector. Equality of quadratic functions means pointwise
/// equal evaluation; (M, v) is not canonical.
class QuadraticFunction {
  public:
    QuadraticFunction() = default;
    QuadraticFunction(Group group, RatMat M, RatVec v);

    static QuadraticFunction zero(const Group& g);

    const Group& group() const { return group_; }
    const RatMat& M() const { return M_; }
    const RatVec& v() const { return v_; }
    const IntVec& C() const { return C_; }

    /// Exponent n(g) with xi(g) = gamma^{n(g)}, computed exactly.
    PhaseExp evaluate(const GroupElement& g) const;

    /// Exponent of the bicharacter B(g,h) = xi(g+h) / (xi(g) xi(h))
    /// = e^{2 pi i g^T M h}.
    PhaseExp bicharacter_exp(const GroupElement& g, const GroupElement& h) const;

    bool same_action(const QuadraticFunction& o) const;

  private:
    Group group_;
    RatMat M_;
    RatVec v_;
    IntVec C_;
};

/// The homomorphism beta: G -> G with chi_{beta(g)}(h) = B(g,h); entries
/// beta(i,j) = d_i M(i,j).
HomMatrix bicharacter_hom(const QuadraticFunction& q);

/// Normal form of xi composed with an automorphism alpha: M' = A^T M A,
/// v' = A^T v + (A^T C_M - C_{M'}) / 2.
QuadraticFunction compose_with_automorphism(const QuadraticFunction& q, const HomMatrix& A);

/// Recover (M, v) from an exponent oracle (n(g) mod 2|G|) promised to be
/// quadratic; throws std::domain_error when verification fails.
QuadraticFunction fit_quadratic(const std::function<Int(const GroupElement&)>& q,
                                const Group& g);

}  // namespace abstab
