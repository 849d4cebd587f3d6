#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "abstab/group.hpp"

namespace abstab {

/// A = U * S * V with U, V unimodular and S diagonal, s_1 | s_2 | ..., s_i >= 0.
struct SnfDecomposition {
    IntMat U;
    IntMat S;
    IntMat V;
};

/// Smith decomposition extended with the inverses of U and V, which the
/// solvers need for back-substitution.
struct SnfFull {
    IntMat U, Uinv, S, V, Vinv;
};

SnfDecomposition smith_normal_form(const IntMat& A);
SnfFull smith_normal_form_full(const IntMat& A);

/// Solution of A x = b over the integers: a particular solution plus a basis
/// of the integer kernel lattice (as columns).
struct LatticeSolution {
    IntVec x0;
    IntMat kernel;
};

std::optional<LatticeSolution> solve_integer(const IntMat& A, const IntVec& b);

/// A subgroup of `group` given by a (possibly empty, possibly redundant)
/// generating list.
struct SubgroupGens {
    Group group;
    std::vector<GroupElement> generators;

    static SubgroupGens trivial(const Group& g) { return {g, {}}; }
    static SubgroupGens whole(const Group& g);
};

/// General solution of the linear system A x = b over groups: alpha(x0) = b,
/// the kernel generators span ker alpha, and (finite domains) every solution
/// is x0 + sum k_i x_i with k_i in [0, sigma_i).
struct GeneralSolution {
    GroupElement x0;
    std::vector<GroupElement> kernel_gens;
    std::vector<Int> kernel_structure;  // orders of the independent kernel generators
};

/// Solve A x = b where A maps `domain` (factors Z or Z_c) into `codomain`
/// (finite factors allowed to be lifted; a 0 modulus row means an exact
/// integer equation). Moduli are lifted into extra integer columns and the
/// combined system is solved by Smith reduction.
std::optional<GeneralSolution> solve_system(const Group& domain, const Group& codomain,
                                            const IntMat& A, const GroupElement& b);

/// Number of solutions of the system (0 when unsolvable); finite domains only.
Int count_solutions(const Group& domain, const Group& codomain, const IntMat& A,
                    const GroupElement& b);

/// Integer coefficients w with sum w_i h_i = b, if b lies in <H>.
std::optional<IntVec> membership(const GroupElement& b, const SubgroupGens& H);

Int subgroup_order(const SubgroupGens& H);

SubgroupGens intersect(const SubgroupGens& H, const SubgroupGens& K);

/// H^perp = { mu : chi_mu(h) = 1 for all h in <H> }.
SubgroupGens annihilator(const SubgroupGens& H);

bool subgroup_contains(const SubgroupGens& H, const GroupElement& g);

/// Solution set of { chi_{h_i}(g) = gamma^{a_i} } as a coset g0 + <gens>.
std::optional<std::pair<GroupElement, SubgroupGens>> solve_character_system(
    const Group& group, const std::vector<std::pair<GroupElement, PhaseExp>>& pairs);

/// Independent generators x_1...x_r of <H> with <H> = <x_1> (+) ... (+) <x_r>
/// and their orders sigma_i > 1; prod sigma_i = |<H>|.
std::pair<std::vector<GroupElement>, std::vector<Int>> independent_generators(
    const SubgroupGens& H);

/// Same, plus integer weights: gens[j] = sum_i weights(i, j) * H.generators[i].
struct IndependentGens {
    std::vector<GroupElement> gens;
    std::vector<Int> orders;
    IntMat weights;
};

IndependentGens independent_generators_with_weights(const SubgroupGens& H);

}  // namespace abstab
