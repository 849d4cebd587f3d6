#pragma once

#include <functional>

#include "abstab/linalg.hpp"

namespace abstab {

/// Matrix representation of a homomorphism alpha: domain -> codomain,
/// alpha(g) = A g reduced modulo the codomain moduli. Entries are kept
/// reduced row-wise; two matrices represent the same map iff they agree on
/// the canonical generators.
class HomMatrix {
  public:
    HomMatrix() = default;
    HomMatrix(Group domain, Group codomain, IntMat entries);

    static HomMatrix identity(const Group& g);
    static HomMatrix zero(const Group& domain, const Group& codomain);

    const Group& domain() const { return domain_; }
    const Group& codomain() const { return codomain_; }
    const IntMat& entries() const { return entries_; }

    /// True iff c_j A(i,j) = 0 mod d_i for all entries, i.e. the matrix
    /// descends to a well-defined homomorphism.
    bool validate() const;

    GroupElement apply(const GroupElement& g) const;
    /// True iff both maps agree on all canonical generators.
    bool same_action(const HomMatrix& o) const;

  private:
    Group domain_, codomain_;
    IntMat entries_;
};

/// Matrix of the composition b after a (integer product of entries).
HomMatrix compose(const HomMatrix& b, const HomMatrix& a);

/// Dual homomorphism: A*(j,i) = (c_j / d_i) A(i,j), exactly integral for a
/// valid A; satisfies chi_{A*(mu)}(g) = chi_mu(A g).
HomMatrix dual(const HomMatrix& A);

/// Inverse of an automorphism, column by column via the group solver;
/// throws std::domain_error if A is not bijective.
HomMatrix invert_automorphism(const HomMatrix& A);

/// Recover the matrix of an endomorphism from an element oracle by probing
/// the canonical generators; verifies homomorphy on a sample.
HomMatrix fit_automorphism(const std::function<GroupElement(const GroupElement&)>& f,
                           const Group& g);

/// Solve alpha(x) = b for a validated matrix representation.
std::optional<GeneralSolution> solve(const HomMatrix& A, const GroupElement& b);

/// A homomorphism Omega: G -> Z_L^r whose kernel is exactly <H>.
HomMatrix kernel_hom(const SubgroupGens& H);

}  // namespace abstab
