#include "abstab/hom.hpp"

namespace abstab {

HomMatrix::HomMatrix(Group domain, Group codomain, IntMat entries)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), entries_(std::move(entries)) {
    if (entries_.rows() != codomain_.factor_count() ||
        entries_.cols() != domain_.factor_count())
        throw std::invalid_argument("HomMatrix: shape mismatch");
    for (Eigen::Index i = 0; i < entries_.rows(); ++i)
        for (Eigen::Index j = 0; j < entries_.cols(); ++j)
            entries_(i, j) = mod(entries_(i, j), codomain_.modulus(i));
}

HomMatrix HomMatrix::identity(const Group& g) {
    return HomMatrix(g, g, IntMat::Identity(g.factor_count(), g.factor_count()).eval());
}

HomMatrix HomMatrix::zero(const Group& domain, const Group& codomain) {
    return HomMatrix(domain, codomain,
                     IntMat::Zero(codomain.factor_count(), domain.factor_count()).eval());
}

bool HomMatrix::validate() const {
    for (Eigen::Index i = 0; i < entries_.rows(); ++i)
        for (Eigen::Index j = 0; j < entries_.cols(); ++j)
            if (mod(domain_.modulus(j) * entries_(i, j), codomain_.modulus(i)) != 0)
                return false;
    return true;
}

GroupElement HomMatrix::apply(const GroupElement& g) const {
    require_same_group(g.group(), domain_);
    return GroupElement(codomain_, (entries_ * g.residues()).eval());
}

bool HomMatrix::same_action(const HomMatrix& o) const {
    if (domain_ != o.domain_ || codomain_ != o.codomain_) return false;
    for (Eigen::Index j = 0; j < domain_.factor_count(); ++j) {
        GroupElement e = GroupElement::unit(domain_, j);
        if (apply(e) != o.apply(e)) return false;
    }
    return true;
}

HomMatrix compose(const HomMatrix& b, const HomMatrix& a) {
    require_same_group(a.codomain(), b.domain());
    return HomMatrix(a.domain(), b.codomain(), (b.entries() * a.entries()).eval());
}

HomMatrix dual(const HomMatrix& A) {
    const Group& dom = A.domain();
    const Group& cod = A.codomain();
    if (!dom.finite() || !cod.finite())
        throw std::domain_error("dual: finite groups only");
    IntMat D(dom.factor_count(), cod.factor_count());
    for (Eigen::Index i = 0; i < cod.factor_count(); ++i)
        for (Eigen::Index j = 0; j < dom.factor_count(); ++j)
            D(j, i) = exact_div(dom.modulus(j) * A.entries()(i, j), cod.modulus(i));
    return HomMatrix(cod, dom, std::move(D));
}

HomMatrix invert_automorphism(const HomMatrix& A) {
    const Group& g = A.domain();
    require_same_group(g, A.codomain());
    const Eigen::Index m = g.factor_count();
    IntMat X(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        auto sol = solve(A, GroupElement::unit(g, j));
        if (!sol) throw std::domain_error("invert_automorphism: not an automorphism");
        X.col(j) = sol->x0.residues();
    }
    HomMatrix inv(g, g, std::move(X));
    // Surjectivity of A implies injectivity on a finite group, but a
    // non-injective A can still produce column solutions; check round trip.
    if (!compose(inv, A).same_action(HomMatrix::identity(g)))
        throw std::domain_error("invert_automorphism: not an automorphism");
    return inv;
}

HomMatrix fit_automorphism(const std::function<GroupElement(const GroupElement&)>& f,
                           const Group& g) {
    const Eigen::Index m = g.factor_count();
    IntMat A(m, m);
    for (Eigen::Index j = 0; j < m; ++j)
        A.col(j) = f(GroupElement::unit(g, j)).residues();
    HomMatrix h(g, g, std::move(A));
    if (!h.validate()) throw std::domain_error("fit_automorphism: oracle is not a homomorphism");
    // Verify on sums of generator pairs; a homomorphic oracle is then
    // reproduced everywhere.
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = i; j < m; ++j) {
            GroupElement x = GroupElement::unit(g, i) + GroupElement::unit(g, j);
            if (f(x) != h.apply(x))
                throw std::domain_error("fit_automorphism: oracle is not a homomorphism");
        }
    return h;
}

std::optional<GeneralSolution> solve(const HomMatrix& A, const GroupElement& b) {
    return solve_system(A.domain(), A.codomain(), A.entries(), b);
}

HomMatrix kernel_hom(const SubgroupGens& H) {
    const Group& G = H.group;
    SubgroupGens ann = annihilator(H);
    Int L = 1;
    for (Eigen::Index i = 0; i < G.factor_count(); ++i) L = lcm(L, G.modulus(i));
    const Eigen::Index r =
        std::max<Eigen::Index>(1, static_cast<Eigen::Index>(ann.generators.size()));
    IntMat Om = IntMat::Zero(r, G.factor_count());
    for (size_t j = 0; j < ann.generators.size(); ++j)
        for (Eigen::Index i = 0; i < G.factor_count(); ++i)
            Om(static_cast<Eigen::Index>(j), i) =
                exact_div(L, G.modulus(i)) * ann.generators[j].residue(i);
    // g in ker Omega iff chi_mu(g) = 1 for every annihilator generator mu,
    // i.e. iff g lies in (H^perp)^perp = <H>.
    return HomMatrix(G, Group(IntVec::Constant(r, L).eval()), std::move(Om));
}

}  // namespace abstab
