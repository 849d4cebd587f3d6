#include "abstab/pauli.hpp"

#include <algorithm>

namespace abstab {

PauliOperator PauliOperator::identity(const Group& g) {
    return {PhaseExp::zero(g), GroupElement::zero(g), GroupElement::zero(g)};
}

PauliOperator PauliOperator::z_op(const GroupElement& g) {
    return {PhaseExp::zero(g.group()), g, GroupElement::zero(g.group())};
}

PauliOperator PauliOperator::x_op(const GroupElement& g) {
    return {PhaseExp::zero(g.group()), GroupElement::zero(g.group()), g};
}

PauliOperator multiply(const PauliOperator& s, const PauliOperator& t) {
    require_same_group(s.group(), t.group());
    // Z(g)X(h) = chi_g(h) X(h)Z(g): commuting X(h_s) past Z(g_t) costs
    // chi_{g_t}(h_s)^-1.
    return {s.a + t.a - character_exp(t.z, s.x), s.z + t.z, s.x + t.x};
}

PauliOperator power(const PauliOperator& s, const Int& n) {
    const Group& g = s.group();
    const Int e = mod(n, g.phase_modulus());
    // (gamma^a Z(z)X(x))^e = gamma^(e a) chi_z(x)^(e(e-1)/2) Z(e z) X(e x):
    // each of the e(e-1)/2 transpositions moves one X(x) past one Z(z).
    const Int cross = exact_div(e * (e - 1), 2);
    return {s.a * e + character_exp(s.z, s.x) * (-cross), s.z * e, s.x * e};
}

PauliOperator adjoint(const PauliOperator& s) {
    // (gamma^a Z(z)X(x))^-1 = gamma^-a X(-x)Z(-z); restoring ZX order costs
    // chi_z(x)^-1.
    return {-s.a - character_exp(s.z, s.x), -s.z, -s.x};
}

bool commute(const PauliOperator& s, const PauliOperator& t) {
    return character_exp(s.z, t.x) == character_exp(t.z, s.x);
}

Int operator_order(const PauliOperator& s) {
    // n0 = lcm of the label orders; s^{n0} is a pure phase gamma^u, whose
    // own order is 2|G| / gcd(u, 2|G|).
    const Int n0 = lcm(element_order(s.z), element_order(s.x));
    const PauliOperator p = power(s, n0);
    const Int& two_n = s.group().phase_modulus();
    return n0 * exact_div(two_n, gcd(p.a.exponent(), two_n));
}

NormalizerGate NormalizerGate::qft(const Group& g, std::vector<Eigen::Index> registers) {
    if (registers.empty()) throw std::invalid_argument("qft: empty register set");
    std::sort(registers.begin(), registers.end());
    if (std::adjacent_find(registers.begin(), registers.end()) != registers.end())
        throw std::invalid_argument("qft: duplicate register");
    if (registers.front() < 0 || registers.back() >= g.factor_count())
        throw std::invalid_argument("qft: register out of range");
    NormalizerGate n;
    n.kind_ = Kind::Qft;
    n.group_ = g;
    n.registers_ = std::move(registers);
    return n;
}

NormalizerGate NormalizerGate::automorphism(HomMatrix a) {
    require_same_group(a.domain(), a.codomain());
    if (!a.validate()) throw std::invalid_argument("automorphism: invalid matrix representation");
    NormalizerGate n;
    n.kind_ = Kind::Automorphism;
    n.group_ = a.domain();
    n.auto_inv_dual_ = invert_automorphism(dual(a));  // throws if not bijective
    n.auto_ = std::move(a);
    return n;
}

NormalizerGate NormalizerGate::quadratic_phase(QuadraticFunction q) {
    NormalizerGate n;
    n.kind_ = Kind::QuadraticPhase;
    n.group_ = q.group();
    n.beta_ = bicharacter_hom(q);
    n.quad_ = std::move(q);
    return n;
}

NormalizerGate NormalizerGate::pauli(PauliOperator p) {
    NormalizerGate n;
    n.kind_ = Kind::Pauli;
    n.group_ = p.group();
    n.pauli_ = std::move(p);
    return n;
}

PauliOperator conjugate(const NormalizerGate& gate, const PauliOperator& s) {
    require_same_group(gate.group(), s.group());
    const Group& g = gate.group();
    switch (gate.kind()) {
        case NormalizerGate::Kind::Qft: {
            // Per listed factor: Z(z_i) -> X(-z_i), X(x_i) -> Z(x_i);
            // restoring ZX order costs the per-factor character phase.
            IntVec z = s.z.residues();
            IntVec x = s.x.residues();
            Int extra = 0;
            const Int& two_n = g.phase_modulus();
            for (Eigen::Index i : gate.registers()) {
                extra += exact_div(two_n, g.modulus(i)) * z(i) * x(i);
                Int zi = z(i);
                z(i) = x(i);
                x(i) = -zi;
            }
            return {s.a + PhaseExp(extra, two_n), GroupElement(g, std::move(z)),
                    GroupElement(g, std::move(x))};
        }
        case NormalizerGate::Kind::Automorphism:
            return {s.a, gate.automorphism_inverse_dual().apply(s.z),
                    gate.automorphism_matrix().apply(s.x)};
        case NormalizerGate::Kind::QuadraticPhase: {
            // X(h) -> xi(h) X(h) Z(beta(h)), Z unchanged; reorder the new
            // Z factor into normal form.
            const GroupElement bh = gate.beta().apply(s.x);
            PhaseExp phase = s.a + gate.quadratic().evaluate(s.x) - character_exp(bh, s.x);
            return {std::move(phase), s.z + bh, s.x};
        }
        case NormalizerGate::Kind::Pauli:
            return multiply(gate.pauli_op(), multiply(s, adjoint(gate.pauli_op())));
    }
    throw std::logic_error("conjugate: unreachable");
}

}  // namespace abstab
