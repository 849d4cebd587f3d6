#include "abstab/quadratic.hpp"

namespace abstab {

namespace {

bool is_integer(const Rat& r) { return r.get_den() == 1; }

Rat frac_part(const Rat& r) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return r - Rat(fl);
}

}  // namespace

QuadraticFunction::QuadraticFunction(Group group, RatMat M, RatVec v)
    : group_(std::move(group)), M_(std::move(M)), v_(std::move(v)) {
    const Eigen::Index m = group_.factor_count();
    if (!group_.finite()) throw std::domain_error("QuadraticFunction: finite groups only");
    if (M_.rows() != m || M_.cols() != m || v_.size() != m)
        throw std::invalid_argument("QuadraticFunction: shape mismatch");
    C_.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            if (M_(i, j) != M_(j, i))
                throw std::invalid_argument("QuadraticFunction: M not symmetric");
            // M represents a homomorphism G -> G-bullet: entries live in
            // (1/d_i)Z and d_j M(i,j) must be integral.
            if (!is_integer(M_(i, j) * Rat(group_.modulus(i))) ||
                !is_integer(M_(i, j) * Rat(group_.modulus(j))))
                throw std::invalid_argument("QuadraticFunction: M not a bullet homomorphism");
        }
        if (!is_integer(v_(i) * Rat(group_.modulus(i))))
            throw std::invalid_argument("QuadraticFunction: v not in the bullet group");
        Rat c = M_(i, i) * Rat(group_.modulus(i));
        C_(i) = c.get_num();
    }
}

QuadraticFunction QuadraticFunction::zero(const Group& g) {
    return QuadraticFunction(g, RatMat::Zero(g.factor_count(), g.factor_count()).eval(),
                             RatVec::Zero(g.factor_count()).eval());
}

PhaseExp QuadraticFunction::evaluate(const GroupElement& g) const {
    require_same_group(g.group(), group_);
    RatVec x(g.residues().size());
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = Rat(g.residue(i));
    Rat n = (x.transpose() * M_ * x).value();
    for (Eigen::Index i = 0; i < x.size(); ++i)
        n += Rat(C_(i)) * x(i) + 2 * v_(i) * x(i);
    Rat scaled = Rat(group_.order()) * n;
    if (!is_integer(scaled))
        throw std::domain_error("QuadraticFunction: non-integral exponent");
    return PhaseExp(scaled.get_num(), group_.phase_modulus());
}

PhaseExp QuadraticFunction::bicharacter_exp(const GroupElement& g,
                                            const GroupElement& h) const {
    require_same_group(g.group(), group_);
    require_same_group(h.group(), group_);
    Rat b = 0;
    for (Eigen::Index i = 0; i < M_.rows(); ++i)
        for (Eigen::Index j = 0; j < M_.cols(); ++j)
            b += Rat(g.residue(i)) * M_(i, j) * Rat(h.residue(j));
    Rat scaled = Rat(group_.phase_modulus()) * b;
    if (!is_integer(scaled))
        throw std::domain_error("QuadraticFunction: non-integral bicharacter exponent");
    return PhaseExp(scaled.get_num(), group_.phase_modulus());
}

bool QuadraticFunction::same_action(const QuadraticFunction& o) const {
    if (group_ != o.group_) return false;
    const Eigen::Index m = group_.factor_count();
    // Quadratic functions agreeing on e_i and e_i + e_j agree everywhere.
    for (Eigen::Index i = 0; i < m; ++i) {
        GroupElement ei = GroupElement::unit(group_, i);
        if (evaluate(ei) != o.evaluate(ei)) return false;
        for (Eigen::Index j = i; j < m; ++j) {
            GroupElement x = ei + GroupElement::unit(group_, j);
            if (evaluate(x) != o.evaluate(x)) return false;
        }
    }
    return true;
}

HomMatrix bicharacter_hom(const QuadraticFunction& q) {
    const Group& g = q.group();
    const Eigen::Index m = g.factor_count();
    IntMat B(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) {
            Rat e = q.M()(i, j) * Rat(g.modulus(i));
            B(i, j) = e.get_num();
        }
    return HomMatrix(g, g, std::move(B));
}

QuadraticFunction compose_with_automorphism(const QuadraticFunction& q,
                                            const HomMatrix& A) {
    const Group& g = q.group();
    require_same_group(A.domain(), g);
    require_same_group(A.codomain(), g);
    const Eigen::Index m = g.factor_count();
    RatMat Ar(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) Ar(i, j) = Rat(A.entries()(i, j));
    RatMat Mp = Ar.transpose() * q.M() * Ar;
    // C' from the composed matrix.
    RatVec Cp(m);
    for (Eigen::Index i = 0; i < m; ++i) Cp(i) = Mp(i, i) * Rat(g.modulus(i));
    RatVec Cm(m);
    for (Eigen::Index i = 0; i < m; ++i) Cm(i) = Rat(q.C()(i));
    RatVec vp = Ar.transpose() * q.v();
    RatVec corr = Ar.transpose() * Cm - Cp;
    for (Eigen::Index i = 0; i < m; ++i) vp(i) = frac_part(vp(i) + corr(i) / Rat(2));
    QuadraticFunction out(g, std::move(Mp), std::move(vp));
    return out;
}

QuadraticFunction fit_quadratic(const std::function<Int(const GroupElement&)>& q,
                                const Group& g) {
    const Eigen::Index m = g.factor_count();
    const Int& two_n = g.phase_modulus();
    auto qmod = [&](const GroupElement& x) { return mod(q(x), two_n); };

    // Bicharacter exponents on generator pairs: n(g+h) - n(g) - n(h)
    // = 2|G| g^T M h, so M(i,j) = delta_ij / 2|G| modulo 1.
    RatMat M(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        GroupElement ei = GroupElement::unit(g, i);
        for (Eigen::Index j = i; j < m; ++j) {
            GroupElement ej = GroupElement::unit(g, j);
            Int delta = mod(qmod(ei + ej) - qmod(ei) - qmod(ej), two_n);
            Rat mij = frac_part(Rat(delta) / Rat(two_n));
            M(i, j) = mij;
            M(j, i) = mij;
        }
    }
    // Residual linear part: 2|G| v_i = n(e_i) - |G| (M(i,i) + C(i)).
    RatVec v(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        GroupElement ei = GroupElement::unit(g, i);
        Rat c = M(i, i) * Rat(g.modulus(i));
        Rat vi = (Rat(qmod(ei)) / Rat(g.order()) - M(i, i) - c) / 2;
        v(i) = frac_part(vi);
    }
    std::optional<QuadraticFunction> maybe;
    try {
        maybe.emplace(g, std::move(M), std::move(v));
    } catch (const std::invalid_argument&) {
        throw std::domain_error("fit_quadratic: oracle is not quadratic");
    }
    QuadraticFunction& fit = *maybe;
    // Verification sample: generators, pairs and one mixed point each.
    for (Eigen::Index i = 0; i < m; ++i) {
        GroupElement ei = GroupElement::unit(g, i);
        if (fit.evaluate(ei).exponent() != qmod(ei))
            throw std::domain_error("fit_quadratic: oracle is not quadratic");
        for (Eigen::Index j = i; j < m; ++j) {
            GroupElement x = ei + GroupElement::unit(g, j);
            GroupElement y = x + ei;
            if (fit.evaluate(x).exponent() != qmod(x) ||
                fit.evaluate(y).exponent() != qmod(y))
                throw std::domain_error("fit_quadratic: oracle is not quadratic");
        }
    }
    return fit;
}

}  // namespace abstab
