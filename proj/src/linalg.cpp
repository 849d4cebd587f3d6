#include "abstab/linalg.hpp"

#include <algorithm>

namespace abstab {

namespace {

// Working state for the Smith reduction. Invariant: A = U * S * V,
// Uinv = U^-1, Vinv = V^-1.
struct SnfWork {
    IntMat S, U, Uinv, V, Vinv;

    explicit SnfWork(const IntMat& A)
        : S(A),
          U(IntMat::Identity(A.rows(), A.rows())),
          Uinv(IntMat::Identity(A.rows(), A.rows())),
          V(IntMat::Identity(A.cols(), A.cols())),
          Vinv(IntMat::Identity(A.cols(), A.cols())) {}

    void swap_rows(Eigen::Index i, Eigen::Index j) {
        if (i == j) return;
        S.row(i).swap(S.row(j));
        U.col(i).swap(U.col(j));
        Uinv.row(i).swap(Uinv.row(j));
    }
    void swap_cols(Eigen::Index i, Eigen::Index j) {
        if (i == j) return;
        S.col(i).swap(S.col(j));
        V.row(i).swap(V.row(j));
        Vinv.col(i).swap(Vinv.col(j));
    }
    // row_i += k * row_j
    void add_row(Eigen::Index i, Eigen::Index j, const Int& k) {
        if (k == 0) return;
        S.row(i) += k * S.row(j);
        U.col(j) -= k * U.col(i);
        Uinv.row(i) += k * Uinv.row(j);
    }
    // col_i += k * col_j
    void add_col(Eigen::Index i, Eigen::Index j, const Int& k) {
        if (k == 0) return;
        S.col(i) += k * S.col(j);
        V.row(j) -= k * V.row(i);
        Vinv.col(i) += k * Vinv.col(j);
    }
    void negate_row(Eigen::Index i) {
        S.row(i) = -S.row(i);
        U.col(i) = -U.col(i);
        Uinv.row(i) = -Uinv.row(i);
    }
};

// Quotient q minimizing |a - q*b|, b > 0.
Int nearest_quotient(const Int& a, const Int& b) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (2 * r > b) q += 1;
    return q;
}

void diagonalize(SnfWork& w) {
    const Eigen::Index r = w.S.rows(), c = w.S.cols();
    const Eigen::Index n = std::min(r, c);
    for (Eigen::Index t = 0; t < n; ++t) {
        for (;;) {
            // Smallest-magnitude nonzero pivot in the trailing submatrix.
            Eigen::Index pi = -1, pj = -1;
            for (Eigen::Index i = t; i < r; ++i)
                for (Eigen::Index j = t; j < c; ++j)
                    if (w.S(i, j) != 0 &&
                        (pi < 0 || abs(w.S(i, j)) < abs(w.S(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) return;  // trailing block is zero
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            if (w.S(t, t) < 0) w.negate_row(t);

            bool clean = true;
            for (Eigen::Index i = t + 1; i < r; ++i) {
                if (w.S(i, t) == 0) continue;
                w.add_row(i, t, -nearest_quotient(w.S(i, t), w.S(t, t)));
                if (w.S(i, t) != 0) clean = false;
            }
            for (Eigen::Index j = t + 1; j < c; ++j) {
                if (w.S(t, j) == 0) continue;
                w.add_col(j, t, -nearest_quotient(w.S(t, j), w.S(t, t)));
                if (w.S(t, j) != 0) clean = false;
            }
            if (clean) break;
        }
    }
}

// Replace diag(a, b) at positions t, t+1 by diag(gcd, lcm) (up to sign) by
// reducing only the 2x2 block; the rest of those rows and columns is zero.
void fix_divisibility(SnfWork& w, Eigen::Index t) {
    for (;;) {
        if (w.S(t, t) != 0 && divides(w.S(t, t), w.S(t + 1, t + 1))) break;
        w.add_col(t, t + 1, 1);
        for (;;) {
            if (w.S(t + 1, t) != 0 &&
                (w.S(t, t) == 0 || abs(w.S(t + 1, t)) < abs(w.S(t, t))))
                w.swap_rows(t, t + 1);
            if (w.S(t, t + 1) != 0 &&
                (w.S(t, t) == 0 || abs(w.S(t, t + 1)) < abs(w.S(t, t))))
                w.swap_cols(t, t + 1);
            if (w.S(t, t) < 0) w.negate_row(t);
            bool clean = true;
            if (w.S(t + 1, t) != 0) {
                w.add_row(t + 1, t, -nearest_quotient(w.S(t + 1, t), w.S(t, t)));
                if (w.S(t + 1, t) != 0) clean = false;
            }
            if (w.S(t, t + 1) != 0) {
                w.add_col(t + 1, t, -nearest_quotient(w.S(t, t + 1), w.S(t, t)));
                if (w.S(t, t + 1) != 0) clean = false;
            }
            if (clean) break;
        }
        if (w.S(t + 1, t + 1) < 0) w.negate_row(t + 1);
    }
}

// Invariant factors of the lattice X Z^m + N Z^m in Z^m (N > 0), with the
// row transform U tracked modulo N. Keeping every entry reduced modulo N
// (the phantom N I columns absorb the overflow) avoids the entry swell of
// a plain Smith reduction on dense matrices with huge entries.
void snf_mod(IntMat S, const Int& N, IntMat* U_out, std::vector<Int>* diag_out) {
    const Eigen::Index m = S.rows();
    IntMat U = IntMat::Identity(m, m);
    auto balance = [&](Int& x) {
        x = mod(x, N);
        if (2 * x > N) x -= N;
    };
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) balance(S(i, j));

    auto add_row = [&](Eigen::Index i, Eigen::Index j, const Int& k) {
        if (k == 0) return;
        S.row(i) += k * S.row(j);
        for (Eigen::Index c = 0; c < m; ++c) balance(S(i, c));
        U.col(j) -= k * U.col(i);
        for (Eigen::Index r = 0; r < m; ++r) U(r, j) = mod(U(r, j), N);
    };
    auto add_col = [&](Eigen::Index i, Eigen::Index j, const Int& k) {
        if (k == 0) return;
        S.col(i) += k * S.col(j);
        for (Eigen::Index r = 0; r < m; ++r) balance(S(r, i));
    };
    auto negate_row = [&](Eigen::Index i) {
        S.row(i) = -S.row(i);
        U.col(i) = -U.col(i);
    };
    auto reduce_block = [&](Eigen::Index t, Eigen::Index rend, Eigen::Index cend) {
        for (;;) {
            Eigen::Index pi = -1, pj = -1;
            for (Eigen::Index i = t; i < rend; ++i)
                for (Eigen::Index j = t; j < cend; ++j)
                    if (S(i, j) != 0 && (pi < 0 || abs(S(i, j)) < abs(S(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) return;
            if (pi != t) {
                S.row(t).swap(S.row(pi));
                U.col(t).swap(U.col(pi));
            }
            if (pj != t) S.col(t).swap(S.col(pj));
            if (S(t, t) < 0) negate_row(t);
            bool clean = true;
            for (Eigen::Index i = t + 1; i < rend; ++i) {
                if (S(i, t) == 0) continue;
                add_row(i, t, -nearest_quotient(S(i, t), S(t, t)));
                if (S(i, t) != 0) clean = false;
            }
            for (Eigen::Index j = t + 1; j < cend; ++j) {
                if (S(t, j) == 0) continue;
                add_col(j, t, -nearest_quotient(S(t, j), S(t, t)));
                if (S(t, j) != 0) clean = false;
            }
            if (clean) break;
        }
    };

    for (Eigen::Index t = 0; t < m; ++t) reduce_block(t, m, m);
    // Fold the phantom columns into each diagonal entry.
    for (Eigen::Index t = 0; t < m; ++t) S(t, t) = gcd(S(t, t), N);
    // Divisibility chain by local pair fixes: the 2x2 block collapses to
    // diag(gcd, lcm), bubbling backwards keeps the prefix sorted.
    for (Eigen::Index t = 0; t + 1 < m; ++t) {
        for (Eigen::Index u = t;; --u) {
            if (!divides(S(u, u), S(u + 1, u + 1))) {
                add_col(u, u + 1, 1);
                reduce_block(u, u + 2, u + 2);
                S(u, u) = gcd(S(u, u), N);
                S(u + 1, u + 1) = gcd(S(u + 1, u + 1), N);
            }
            if (u == 0) break;
        }
    }
    diag_out->assign(static_cast<size_t>(m), Int(0));
    for (Eigen::Index t = 0; t < m; ++t) (*diag_out)[static_cast<size_t>(t)] = S(t, t);
    *U_out = std::move(U);
}

}  // namespace

SnfFull smith_normal_form_full(const IntMat& A) {
    SnfWork w(A);
    const Eigen::Index n = std::min(A.rows(), A.cols());
    diagonalize(w);
    // Enforce the divisibility chain with local 2x2 fixes, bubbling each
    // repaired pair backwards like an insertion sort.
    for (Eigen::Index t = 0; t + 1 < n; ++t) {
        if (w.S(t + 1, t + 1) == 0) break;
        for (Eigen::Index u = t;; --u) {
            if (w.S(u, u) != 0 && !divides(w.S(u, u), w.S(u + 1, u + 1)))
                fix_divisibility(w, u);
            if (u == 0) break;
        }
    }
    return {std::move(w.U), std::move(w.Uinv), std::move(w.S), std::move(w.V),
            std::move(w.Vinv)};
}

SnfDecomposition smith_normal_form(const IntMat& A) {
    SnfFull f = smith_normal_form_full(A);
    return {std::move(f.U), std::move(f.S), std::move(f.V)};
}

std::optional<LatticeSolution> solve_integer(const IntMat& A, const IntVec& b) {
    const Eigen::Index r = A.rows(), c = A.cols();
    SnfFull f = smith_normal_form_full(A);
    const IntVec w = f.Uinv * b;
    IntVec z = IntVec::Zero(c);
    const Eigen::Index n = std::min(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
        const Int s = i < n ? f.S(i, i) : Int(0);
        if (s == 0) {
            if (w(i) != 0) return std::nullopt;
        } else {
            if (!divides(s, w(i))) return std::nullopt;
            z(i) = exact_div(w(i), s);
        }
    }
    LatticeSolution sol;
    sol.x0 = f.Vinv * z;
    std::vector<Eigen::Index> free_cols;
    for (Eigen::Index j = 0; j < c; ++j)
        if (j >= n || f.S(j, j) == 0) free_cols.push_back(j);
    sol.kernel.resize(c, static_cast<Eigen::Index>(free_cols.size()));
    for (Eigen::Index k = 0; k < sol.kernel.cols(); ++k)
        sol.kernel.col(k) = f.Vinv.col(free_cols[static_cast<size_t>(k)]);
    return sol;
}

SubgroupGens SubgroupGens::whole(const Group& g) {
    SubgroupGens s{g, {}};
    for (Eigen::Index i = 0; i < g.factor_count(); ++i)
        s.generators.push_back(GroupElement::unit(g, i));
    return s;
}

std::optional<GeneralSolution> solve_system(const Group& domain, const Group& codomain,
                                            const IntMat& A, const GroupElement& b) {
    require_same_group(b.group(), codomain);
    const Eigen::Index m = domain.factor_count(), n = codomain.factor_count();
    if (A.rows() != n || A.cols() != m)
        throw std::invalid_argument("solve_system: matrix shape mismatch");

    // Lift the codomain moduli into extra integer columns: [A | diag(d)].
    IntMat M(n, m + n);
    M.leftCols(m) = A;
    M.rightCols(n).setZero();
    for (Eigen::Index i = 0; i < n; ++i) M(i, m + i) = codomain.modulus(i);

    auto lat = solve_integer(M, b.residues());
    if (!lat) return std::nullopt;

    GeneralSolution sol{GroupElement(domain, lat->x0.head(m).eval()), {}, {}};
    std::vector<GroupElement> raw;
    for (Eigen::Index k = 0; k < lat->kernel.cols(); ++k) {
        GroupElement g(domain, lat->kernel.col(k).head(m).eval());
        if (!g.is_zero()) raw.push_back(std::move(g));
    }
    if (domain.finite()) {
        auto [gens, orders] = independent_generators({domain, raw});
        sol.kernel_gens = std::move(gens);
        sol.kernel_structure = std::move(orders);
    } else {
        sol.kernel_gens = std::move(raw);
    }
    return sol;
}

Int count_solutions(const Group& domain, const Group& codomain, const IntMat& A,
                    const GroupElement& b) {
    if (!domain.finite()) throw std::domain_error("count_solutions: infinite domain");
    auto sol = solve_system(domain, codomain, A, b);
    if (!sol) return 0;
    Int n = 1;
    for (const Int& s : sol->kernel_structure) n *= s;
    return n;
}

std::optional<IntVec> membership(const GroupElement& b, const SubgroupGens& H) {
    require_same_group(b.group(), H.group);
    const Eigen::Index m = H.group.factor_count();
    const Eigen::Index k = static_cast<Eigen::Index>(H.generators.size());
    IntMat A(m, k);
    for (Eigen::Index j = 0; j < k; ++j)
        A.col(j) = H.generators[static_cast<size_t>(j)].residues();
    auto sol = solve_system(Group::integer_lattice(std::max<Eigen::Index>(k, 1)),
                            H.group, k == 0 ? IntMat::Zero(m, 1).eval() : A, b);
    if (!sol) return std::nullopt;
    if (k == 0) return IntVec(0);
    return sol->x0.residues();
}

bool subgroup_contains(const SubgroupGens& H, const GroupElement& g) {
    return membership(g, H).has_value();
}

std::pair<std::vector<GroupElement>, std::vector<Int>> independent_generators(
    const SubgroupGens& H) {
    IndependentGens ig = independent_generators_with_weights(H);
    return {std::move(ig.gens), std::move(ig.orders)};
}

IndependentGens independent_generators_with_weights(const SubgroupGens& H) {
    const Group& G = H.group;
    if (!G.finite())
        throw std::domain_error("independent_generators: infinite group");
    const Eigen::Index m = G.factor_count();
    const Eigen::Index k = static_cast<Eigen::Index>(H.generators.size());

    // Lattice L spanned by the generators and the modulus vectors; <H> = L/D
    // where D = diag(d) Z^m.
    IntMat M(m, k + m);
    for (Eigen::Index j = 0; j < k; ++j)
        M.col(j) = H.generators[static_cast<size_t>(j)].residues();
    M.rightCols(m).setZero();
    for (Eigen::Index i = 0; i < m; ++i) M(i, k + i) = G.modulus(i);

    SnfFull f = smith_normal_form_full(M);
    // D has full rank, so s_1..s_m are all positive and B = U diag(s) is a
    // basis of L.
    IntMat B(m, m);
    for (Eigen::Index i = 0; i < m; ++i) B.col(i) = f.U.col(i) * f.S(i, i);
    // Express D in the basis B: X = B^-1 diag(d), entrywise exact. Since
    // N L is contained in D for N = lcm(d), working modulo N (with phantom
    // N I columns) leaves the quotient L/D unchanged, and any perturbation
    // of the transform by multiples of N moves a generator by an element of
    // N L, i.e. by something that is zero in G.
    Int N = 1;
    for (Eigen::Index i = 0; i < m; ++i) N = lcm(N, G.modulus(i));
    IntMat X(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            X(i, j) = mod(exact_div(f.Uinv(i, j) * G.modulus(j), f.S(i, i)), N);

    IntMat U2;
    std::vector<Int> diag;
    snf_mod(std::move(X), N, &U2, &diag);
    const IntMat gens_mat = B * U2;
    // M Vinv = U S, so B = (M Vinv).leftCols(m) and the first k rows of
    // Vinv U2 express each new generator over the original ones (the other
    // rows multiply modulus columns, which vanish in G).
    const IntMat coeff = f.Vinv.leftCols(m) * U2;
    IndependentGens out;
    out.weights.resize(k, 0);
    for (Eigen::Index i = 0; i < m; ++i) {
        if (diag[static_cast<size_t>(i)] == 1) continue;
        out.gens.emplace_back(G, gens_mat.col(i).eval());
        out.orders.push_back(diag[static_cast<size_t>(i)]);
        out.weights.conservativeResize(k, out.weights.cols() + 1);
        out.weights.col(out.weights.cols() - 1) = coeff.col(i).head(k);
    }
    return out;
}

Int subgroup_order(const SubgroupGens& H) {
    auto [gens, orders] = independent_generators(H);
    Int n = 1;
    for (const Int& s : orders) n *= s;
    return n;
}

SubgroupGens intersect(const SubgroupGens& H, const SubgroupGens& K) {
    require_same_group(H.group, K.group);
    const Group& G = H.group;
    if (!G.finite()) throw std::domain_error("intersect: infinite group");
    const Eigen::Index m = G.factor_count();
    const Eigen::Index h = static_cast<Eigen::Index>(H.generators.size());
    const Eigen::Index k = static_cast<Eigen::Index>(K.generators.size());

    // Lattice intersection: solve B_H u = B_K v over Z where B_X spans the
    // lattice of <X> lifted to Z^m.
    IntMat M(m, h + m + k + m);
    M.setZero();
    for (Eigen::Index j = 0; j < h; ++j)
        M.col(j) = H.generators[static_cast<size_t>(j)].residues();
    for (Eigen::Index i = 0; i < m; ++i) M(i, h + i) = G.modulus(i);
    for (Eigen::Index j = 0; j < k; ++j)
        M.col(h + m + j) = -K.generators[static_cast<size_t>(j)].residues();
    for (Eigen::Index i = 0; i < m; ++i) M(i, h + m + k + i) = -G.modulus(i);

    auto lat = solve_integer(M, IntVec::Zero(m).eval());
    SubgroupGens out{G, {}};
    for (Eigen::Index c = 0; c < lat->kernel.cols(); ++c) {
        IntVec x = IntVec::Zero(m);
        for (Eigen::Index j = 0; j < h; ++j)
            x += lat->kernel(j, c) * H.generators[static_cast<size_t>(j)].residues();
        for (Eigen::Index i = 0; i < m; ++i)
            x(i) += lat->kernel(h + i, c) * G.modulus(i);
        GroupElement g(G, std::move(x));
        if (!g.is_zero()) out.generators.push_back(std::move(g));
    }
    return out;
}

SubgroupGens annihilator(const SubgroupGens& H) {
    const Group& G = H.group;
    if (!G.finite()) throw std::domain_error("annihilator: infinite group");
    if (H.generators.empty()) return SubgroupGens::whole(G);
    const Eigen::Index m = G.factor_count();
    const Eigen::Index k = static_cast<Eigen::Index>(H.generators.size());

    // mu in H^perp iff sum_i (L/d_i) h_j(i) mu(i) = 0 mod L for every
    // generator h_j, with L = lcm(d_i).
    Int L = 1;
    for (Eigen::Index i = 0; i < m; ++i) L = lcm(L, G.modulus(i));
    IntMat Om(k, m);
    for (Eigen::Index j = 0; j < k; ++j)
        for (Eigen::Index i = 0; i < m; ++i)
            Om(j, i) = exact_div(L, G.modulus(i)) *
                       H.generators[static_cast<size_t>(j)].residue(i);
    Group cod(IntVec::Constant(k, L).eval());
    auto sol = solve_system(G, cod, Om, GroupElement::zero(cod));
    return {G, std::move(sol->kernel_gens)};
}

std::optional<std::pair<GroupElement, SubgroupGens>> solve_character_system(
    const Group& group, const std::vector<std::pair<GroupElement, PhaseExp>>& pairs) {
    const Eigen::Index m = group.factor_count();
    const Eigen::Index k = static_cast<Eigen::Index>(pairs.size());
    const Int& two_n = group.phase_modulus();
    if (k == 0)
        return std::make_pair(GroupElement::zero(group), SubgroupGens::whole(group));

    // chi_{h}(g) = gamma^a demands an even exponent: characters are |G|-th
    // roots of unity.
    IntMat Om(k, m);
    IntVec b(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        const auto& [h, a] = pairs[static_cast<size_t>(j)];
        require_same_group(h.group(), group);
        if (a.modulus() != two_n)
            throw std::invalid_argument("solve_character_system: phase modulus mismatch");
        if (mod(a.exponent(), 2) != 0) return std::nullopt;
        for (Eigen::Index i = 0; i < m; ++i)
            Om(j, i) = exact_div(two_n, group.modulus(i)) * h.residue(i);
        b(j) = a.exponent();
    }
    Group cod(IntVec::Constant(k, two_n).eval());
    auto sol = solve_system(group, cod, Om, GroupElement(cod, std::move(b)));
    if (!sol) return std::nullopt;
    return std::make_pair(sol->x0, SubgroupGens{group, std::move(sol->kernel_gens)});
}

}  // namespace abstab
