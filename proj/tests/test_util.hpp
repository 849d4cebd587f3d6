#pragma once

#include <vector>

#include "abstab/circuit.hpp"
#include "abstab/dense.hpp"
#include "abstab/io.hpp"
#include "abstab/rng.hpp"

namespace abstab::testutil {

inline long lrand(CounterRng& rng, long n) { return rng.below(n).get_si(); }

/// Random group with |G| <= max_order and 1..max_factors factors.
inline Group random_group(CounterRng& rng, long max_order, long max_factors) {
    for (;;) {
        const long m = 1 + lrand(rng, max_factors);
        IntVec moduli(m);
        Int order = 1;
        for (long i = 0; i < m; ++i) {
            moduli(i) = 2 + lrand(rng, 6);
            order *= moduli(i);
        }
        if (order <= max_order) return Group(std::move(moduli));
    }
}

inline GroupElement random_element(CounterRng& rng, const Group& g) {
    IntVec r(g.factor_count());
    for (Eigen::Index i = 0; i < r.size(); ++i) r(i) = rng.below(g.modulus(i));
    return GroupElement(g, std::move(r));
}

inline PauliOperator random_pauli(CounterRng& rng, const Group& g) {
    return {PhaseExp(rng.below(g.phase_modulus()), g.phase_modulus()),
            random_element(rng, g), random_element(rng, g)};
}

inline HomMatrix random_automorphism(CounterRng& rng, const Group& g) {
    const Eigen::Index m = g.factor_count();
    for (int attempt = 0; attempt < 200; ++attempt) {
        IntMat a(m, m);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j) a(i, j) = rng.below(g.modulus(i));
        HomMatrix h(g, g, std::move(a));
        if (!h.validate()) continue;
        try {
            invert_automorphism(h);
            return h;
        } catch (const std::domain_error&) {
        }
    }
    return HomMatrix::identity(g);
}

inline QuadraticFunction random_quadratic(CounterRng& rng, const Group& g) {
    const Eigen::Index m = g.factor_count();
    RatMat M(m, m);
    RatVec v(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i; j < m; ++j) {
            Int den = gcd(g.modulus(i), g.modulus(j));
            Rat r(rng.below(den), den);
            r.canonicalize();
            M(i, j) = r;
            M(j, i) = r;
        }
        Rat r(rng.below(g.modulus(i)), g.modulus(i));
        r.canonicalize();
        v(i) = r;
    }
    return QuadraticFunction(g, std::move(M), std::move(v));
}

inline NormalizerGate random_gate(CounterRng& rng, const Group& g) {
    switch (lrand(rng, 4)) {
        case 0: {
            std::vector<Eigen::Index> regs;
            for (Eigen::Index i = 0; i < g.factor_count(); ++i)
                if (lrand(rng, 2)) regs.push_back(i);
            if (regs.empty()) regs.push_back(lrand(rng, g.factor_count()));
            return NormalizerGate::qft(g, std::move(regs));
        }
        case 1:
            return NormalizerGate::automorphism(random_automorphism(rng, g));
        case 2:
            return NormalizerGate::quadratic_phase(random_quadratic(rng, g));
        default:
            return NormalizerGate::pauli(random_pauli(rng, g));
    }
}

/// Exact determinant by rational Gaussian elimination.
inline Rat determinant(const IntMat& a) {
    const Eigen::Index n = a.rows();
    RatMat m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Rat(a(i, j));
    Rat det = 1;
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index p = -1;
        for (Eigen::Index r = c; r < n; ++r)
            if (m(r, c) != 0) {
                p = r;
                break;
            }
        if (p < 0) return 0;
        if (p != c) {
            m.row(p).swap(m.row(c));
            det = -det;
        }
        det *= m(c, c);
        for (Eigen::Index r = c + 1; r < n; ++r) {
            Rat f = m(r, c) / m(c, c);
            for (Eigen::Index k = c; k < n; ++k) m(r, k) -= f * m(c, k);
        }
    }
    return det;
}

/// All elements of a small finite group, in dense index order.
inline std::vector<GroupElement> all_elements(const Group& g) {
    std::vector<GroupElement> out;
    const long n = g.order().get_si();
    out.reserve(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) out.push_back(dense::element_at(g, i));
    return out;
}

inline GroupElement element(const Group& g, std::initializer_list<long> vals) {
    IntVec r(static_cast<Eigen::Index>(vals.size()));
    Eigen::Index i = 0;
    for (long v : vals) r(i++) = v;
    return GroupElement(g, std::move(r));
}

inline double matrix_distance(const dense::CMat& a, const dense::CMat& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

/// Distance between states up to one global phase.
inline double state_distance_up_to_phase(const dense::CVec& a, const dense::CVec& b) {
    Eigen::Index pivot = 0;
    double best = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (std::abs(a(i)) > best) {
            best = std::abs(a(i));
            pivot = i;
        }
    if (best < 1e-12) return (a - b).norm();
    std::complex<double> phase = b(pivot) / a(pivot);
    if (std::abs(std::abs(phase) - 1.0) > 1e-6) return (a * 1.0 - b).norm();
    return (a * phase - b).norm();
}

}  // namespace abstab::testutil
