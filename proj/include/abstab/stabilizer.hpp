#pragma once

#include <memory>
#include <mutex>
#include <optional>

#include "abstab/pauli.hpp"
#include "abstab/rng.hpp"

namespace abstab {

/// Label subgroups of a stabilizer group: H is spanned by the X-parts of the
/// generators, D by the Z-labels of the diagonal elements. The diagonal
/// generators carry their exact phases.
struct LabelGroups {
    SubgroupGens h;
    SubgroupGens d;
    std::vector<PauliOperator> diagonal_gens;
};

/// Support and dimension data: the stabilized space is supported on
/// base + <d_perp> and has dimension |D^perp| / |<H>|.
struct StructureInfo {
    GroupElement base;
    SubgroupGens d_perp;
    Int dimension;
};

/// A group of pairwise commuting Pauli operators given by generators.
/// Immutable; derived data (label groups, support structure) is computed
/// once on demand and shared between copies.
class StabilizerGroup {
  public:
    StabilizerGroup() = default;
    /// Validates pairwise commutation and rejects generators gamma^a I with
    /// a != 0 (such a group stabilizes nothing).
    StabilizerGroup(Group group, std::vector<PauliOperator> generators);
    /// Skips validation; for generator lists obtained from an already valid
    /// group (conjugation, measurement updates).
    static StabilizerGroup unchecked(Group group, std::vector<PauliOperator> generators);

    const Group& group() const { return group_; }
    const std::vector<PauliOperator>& generators() const { return generators_; }

    /// Subgroup of G x G spanned by the labels (z, x) of the generators.
    const SubgroupGens& label_subgroup() const;
    /// |S|, the order of the label subgroup.
    const Int& size() const;

    const LabelGroups& label_groups() const;

    /// Throws std::domain_error when the diagonal constraints are
    /// inconsistent (the group stabilizes no vector).
    const StructureInfo& structure() const;

    /// True iff the stabilized space is one-dimensional.
    bool is_unique() const;

    /// Phase exponent and |H| for the amplitude gamma^a / sqrt(|H|) at x;
    /// absent when x is off the support. Convention: the amplitude at the
    /// canonical support representative is positive real. Unique states only.
    std::optional<std::pair<PhaseExp, Int>> amplitude(const GroupElement& x) const;

    /// Uniform sample from the support of the stabilized state.
    GroupElement sample_support(CounterRng& rng) const;

    /// <psi| t |psi> as a pure phase, or absent when the expectation is 0.
    /// Unique states only.
    std::optional<PhaseExp> expectation(const PauliOperator& t) const;

  private:
    struct Cache;
    const Cache* analysis() const;
    Group group_;
    std::vector<PauliOperator> generators_;
    std::shared_ptr<Cache> cache_;
};

/// Pauli labels (z, x) embedded in G x G.
GroupElement label_element(const Group& gxg, const PauliOperator& s);

/// Generators of the centralizer of t inside S.
std::vector<PauliOperator> centralizer(const StabilizerGroup& s, const PauliOperator& t);

/// Equivalent group on an independent generator list of at most
/// rank(G x G) elements.
StabilizerGroup reduce_generators(const StabilizerGroup& s);

/// Achievable outcomes of measuring t: eigenvalues gamma^{(2|G|/N) j} with
/// j = j0 + stride * l for l in [0, count), each of probability 1 / count.
struct OutcomeSet {
    Int order;   // N, the operator order of t
    Int count;   // M, the number of achievable eigenvalues
    Int j0;
    Int stride;  // N / M
};

OutcomeSet outcome_set(const StabilizerGroup& s, const PauliOperator& t);

struct MeasurementOutcome {
    PhaseExp eigenvalue_exp;
    Rat probability;
    StabilizerGroup post_stabilizer;
};

/// Sample one measurement of t on the state stabilized by s and return the
/// collapsed stabilizer group.
MeasurementOutcome measure_pauli(const StabilizerGroup& s, const PauliOperator& t,
                                 CounterRng& rng);

/// The outcome with index l in the achievable set, with its post-group.
MeasurementOutcome measurement_branch(const StabilizerGroup& s, const PauliOperator& t,
                                      const OutcomeSet& outcomes, const Int& l);

/// All achievable outcomes; requires the outcome count to be small.
std::vector<MeasurementOutcome> enumerate_outcomes(const StabilizerGroup& s,
                                                   const PauliOperator& t);

}  // namespace abstab
