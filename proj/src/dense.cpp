#include "abstab/dense.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace abstab::dense {

namespace {

long to_long(const Int& x) {
    if (!x.fits_slong_p()) throw std::domain_error("dense: group too large");
    return x.get_si();
}

double rational_value(const Int& num, const Int& den) {
    return Rat(num, den).get_d();
}

}  // namespace

Eigen::Index index_of(const GroupElement& g) {
    const Group& grp = g.group();
    long idx = 0;
    for (Eigen::Index i = 0; i < grp.factor_count(); ++i) {
        idx = idx * to_long(grp.modulus(i)) + to_long(g.residue(i));
    }
    return idx;
}

GroupElement element_at(const Group& g, Eigen::Index idx) {
    IntVec r(g.factor_count());
    long rem = idx;
    for (Eigen::Index i = g.factor_count() - 1; i >= 0; --i) {
        long d = to_long(g.modulus(i));
        r(i) = rem % d;
        rem /= d;
    }
    return GroupElement(g, std::move(r));
}

std::complex<double> phase_value(const PhaseExp& p) {
    double angle = 2.0 * std::numbers::pi * rational_value(p.exponent(), p.modulus());
    return std::polar(1.0, angle);
}

std::complex<double> character_value(const GroupElement& g, const GroupElement& h) {
    return phase_value(character_exp(g, h));
}

CVec basis_state(const GroupElement& g) {
    CVec psi = CVec::Zero(to_long(g.group().order()));
    psi(index_of(g)) = 1.0;
    return psi;
}

CMat pauli_matrix(const PauliOperator& s) {
    const Group& g = s.group();
    const long n = to_long(g.order());
    CMat m = CMat::Zero(n, n);
    const std::complex<double> ph = phase_value(s.a);
    for (long k = 0; k < n; ++k) {
        GroupElement ek = element_at(g, k);
        GroupElement target = ek + s.x;
        m(index_of(target), k) = ph * character_value(s.z, target);
    }
    return m;
}

CMat gate_matrix(const NormalizerGate& gate) {
    const Group& g = gate.group();
    const long n = to_long(g.order());
    switch (gate.kind()) {
        case NormalizerGate::Kind::Qft: {
            CMat m(n, n);
            double norm = 1.0;
            for (Eigen::Index i : gate.registers()) norm /= std::sqrt(to_long(g.modulus(i)));
            for (long r = 0; r < n; ++r) {
                GroupElement er = element_at(g, r);
                for (long c = 0; c < n; ++c) {
                    GroupElement ec = element_at(g, c);
                    std::complex<double> val = norm;
                    bool zero = false;
                    auto listed = gate.registers().begin();
                    for (Eigen::Index i = 0; i < g.factor_count(); ++i) {
                        if (listed != gate.registers().end() && *listed == i) {
                            ++listed;
                            double angle = 2.0 * std::numbers::pi *
                                           rational_value(er.residue(i) * ec.residue(i),
                                                          g.modulus(i));
                            val *= std::polar(1.0, angle);
                        } else if (er.residue(i) != ec.residue(i)) {
                            zero = true;
                            break;
                        }
                    }
                    m(r, c) = zero ? 0.0 : val;
                }
            }
            return m;
        }
        case NormalizerGate::Kind::Automorphism: {
            CMat m = CMat::Zero(n, n);
            for (long c = 0; c < n; ++c)
                m(index_of(gate.automorphism_matrix().apply(element_at(g, c))), c) = 1.0;
            return m;
        }
        case NormalizerGate::Kind::QuadraticPhase: {
            CMat m = CMat::Zero(n, n);
            for (long c = 0; c < n; ++c)
                m(c, c) = phase_value(gate.quadratic().evaluate(element_at(g, c)));
            return m;
        }
        case NormalizerGate::Kind::Pauli:
            return pauli_matrix(gate.pauli_op());
    }
    throw std::logic_error("gate_matrix: unreachable");
}

std::vector<double> born_distribution(const PauliOperator& s, const CVec& psi) {
    const long N = to_long(operator_order(s));
    const CMat m = pauli_matrix(s);
    std::vector<double> probs(static_cast<std::size_t>(N), 0.0);
    // p_j = <psi| P_j |psi> with P_j = (1/N) sum_k lambda_j^{-k} s^k.
    const Int& two_n = s.group().phase_modulus();
    const Int step = exact_div(two_n, Int(N));
    CVec power_psi = psi;
    for (long k = 0; k < N; ++k) {
        if (k > 0) power_psi = m * power_psi;
        const std::complex<double> overlap = psi.dot(power_psi);
        for (long j = 0; j < N; ++j) {
            const std::complex<double> lam =
                phase_value(PhaseExp(-step * j * k, two_n));
            probs[static_cast<std::size_t>(j)] += (lam * overlap).real() / N;
        }
    }
    for (double& p : probs) {
        if (p < 0 && p > -1e-12) p = 0;
    }
    return probs;
}

CVec project_eigenspace(const PauliOperator& s, long j, const CVec& psi) {
    const long N = to_long(operator_order(s));
    const CMat m = pauli_matrix(s);
    const Int& two_n = s.group().phase_modulus();
    const Int step = exact_div(two_n, Int(N));
    CVec acc = CVec::Zero(psi.size());
    CVec power_psi = psi;
    for (long k = 0; k < N; ++k) {
        if (k > 0) power_psi = m * power_psi;
        acc += phase_value(PhaseExp(-step * j * k, two_n)) * power_psi;
    }
    acc /= static_cast<double>(N);
    const double norm = acc.norm();
    if (norm < 1e-12) throw std::domain_error("project_eigenspace: zero projection");
    return acc / norm;
}

CMat joint_plus_one_projector(const Group& g, const std::vector<PauliOperator>& ops) {
    const long n = to_long(g.order());
    CMat proj = CMat::Identity(n, n);
    for (const PauliOperator& s : ops) {
        const long N = to_long(operator_order(s));
        const CMat m = pauli_matrix(s);
        CMat p = CMat::Zero(n, n);
        CMat power = CMat::Identity(n, n);
        for (long k = 0; k < N; ++k) {
            if (k > 0) power = m * power;
            p += power;
        }
        proj = proj * (p / static_cast<double>(N));
    }
    return proj;
}

}  // namespace abstab::dense
