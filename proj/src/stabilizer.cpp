#include "abstab/stabilizer.hpp"

#include <stdexcept>

namespace abstab {

namespace {

PauliOperator generator_product(const std::vector<PauliOperator>& gens,
                                const Group& group, const IntVec& w) {
    PauliOperator p = PauliOperator::identity(group);
    for (Eigen::Index i = 0; i < w.size(); ++i)
        p = multiply(p, power(gens[static_cast<size_t>(i)], w(i)));
    return p;
}

}  // namespace

struct StabilizerGroup::Cache {
    std::once_flag once;
    std::once_flag size_once;
    Group gxg;
    SubgroupGens labels;
    Int size = 1;
    LabelGroups lg;
    Int h_order = 1;
    std::vector<GroupElement> h_indep;
    std::vector<Int> h_orders;
    bool consistent = false;
    StructureInfo st;
    bool unique = false;

    void build(const Group& group, const std::vector<PauliOperator>& gens) {
        gxg = Group::product(group, group);
        labels.group = gxg;
        lg.h.group = group;
        lg.d.group = group;
        for (const PauliOperator& s : gens) {
            labels.generators.push_back(label_element(gxg, s));
            lg.h.generators.push_back(s.x);
        }

        // Diagonal subgroup: products with vanishing X-part come from the
        // kernel of the coefficient map w -> sum w_i x_i.
        const Eigen::Index r = static_cast<Eigen::Index>(gens.size());
        if (r > 0) {
            IntMat A(group.factor_count(), r);
            for (Eigen::Index j = 0; j < r; ++j)
                A.col(j) = gens[static_cast<size_t>(j)].x.residues();
            auto sol = solve_system(Group::integer_lattice(r), group, A,
                                    GroupElement::zero(group));
            for (const GroupElement& w : sol->kernel_gens) {
                PauliOperator p = generator_product(gens, group, w.residues());
                if (!p.x.is_zero())
                    throw std::logic_error("stabilizer: diagonal product has X-part");
                if (p.is_identity()) continue;
                lg.d.generators.push_back(p.z);
                lg.diagonal_gens.push_back(std::move(p));
            }
        }

        std::tie(h_indep, h_orders) = independent_generators(lg.h);
        for (const Int& s : h_orders) h_order *= s;

        // Support: each diagonal gamma^a Z(g) pins chi_g(x) = gamma^{-a}.
        std::vector<std::pair<GroupElement, PhaseExp>> pairs;
        for (const PauliOperator& p : lg.diagonal_gens) pairs.emplace_back(p.z, -p.a);
        auto res = solve_character_system(group, pairs);
        if (!res) return;  // no stabilized vector
        consistent = true;
        st.base = std::move(res->first);
        st.d_perp = std::move(res->second);
        st.dimension = exact_div(subgroup_order(st.d_perp), h_order);
        unique = st.dimension == 1;
    }
};

StabilizerGroup::StabilizerGroup(Group group, std::vector<PauliOperator> generators)
    : group_(std::move(group)),
      generators_(std::move(generators)),
      cache_(std::make_shared<Cache>()) {
    for (size_t i = 0; i < generators_.size(); ++i) {
        require_same_group(generators_[i].group(), group_);
        if (generators_[i].z.is_zero() && generators_[i].x.is_zero() &&
            generators_[i].a.exponent() != 0)
            throw std::invalid_argument("StabilizerGroup: phased identity generator");
        for (size_t j = 0; j < i; ++j)
            if (!commute(generators_[i], generators_[j]))
                throw std::invalid_argument("StabilizerGroup: generators do not commute");
    }
}

StabilizerGroup StabilizerGroup::unchecked(Group group,
                                           std::vector<PauliOperator> generators) {
    StabilizerGroup s;
    s.group_ = std::move(group);
    s.generators_ = std::move(generators);
    s.cache_ = std::make_shared<Cache>();
    return s;
}

const StabilizerGroup::Cache* StabilizerGroup::analysis() const {
    if (!cache_) throw std::logic_error("StabilizerGroup: default-constructed");
    std::call_once(cache_->once, [this] { cache_->build(group_, generators_); });
    return cache_.get();
}

const SubgroupGens& StabilizerGroup::label_subgroup() const {
    return analysis()->labels;
}

const Int& StabilizerGroup::size() const {
    Cache* c = const_cast<Cache*>(analysis());
    std::call_once(c->size_once, [c] { c->size = subgroup_order(c->labels); });
    return c->size;
}

const LabelGroups& StabilizerGroup::label_groups() const { return analysis()->lg; }

const StructureInfo& StabilizerGroup::structure() const {
    const Cache* c = analysis();
    if (!c->consistent)
        throw std::domain_error("StabilizerGroup: inconsistent diagonal constraints");
    return c->st;
}

bool StabilizerGroup::is_unique() const { return analysis()->unique; }

std::optional<std::pair<PhaseExp, Int>> StabilizerGroup::amplitude(
    const GroupElement& x) const {
    const Cache* c = analysis();
    if (!c->unique) throw std::domain_error("amplitude: state is not unique");
    require_same_group(x.group(), group_);
    auto w = membership(x - c->st.base, c->lg.h);
    if (!w) return std::nullopt;
    PauliOperator s = generator_product(generators_, group_, *w);
    return std::make_pair(s.a + character_exp(s.z, x), c->h_order);
}

GroupElement StabilizerGroup::sample_support(CounterRng& rng) const {
    const Cache* c = analysis();
    if (!c->unique) throw std::domain_error("sample_support: state is not unique");
    GroupElement g = c->st.base;
    for (size_t i = 0; i < c->h_indep.size(); ++i)
        g = g + c->h_indep[i] * rng.below(c->h_orders[i]);
    return g;
}

std::optional<PhaseExp> StabilizerGroup::expectation(const PauliOperator& t) const {
    const Cache* c = analysis();
    if (!c->unique) throw std::domain_error("expectation: state is not unique");
    require_same_group(t.group(), group_);
    auto w = membership(t.x, c->lg.h);
    if (!w) return std::nullopt;
    PauliOperator res = multiply(t, adjoint(generator_product(generators_, group_, *w)));
    if (!res.x.is_zero()) throw std::logic_error("expectation: residual X-part");
    // <psi| gamma^e Z(delta) |psi> averages chi_delta over the support coset:
    // zero unless delta annihilates H.
    for (const GroupElement& h : c->lg.h.generators)
        if (character_exp(res.z, h).exponent() != 0) return std::nullopt;
    return res.a + character_exp(res.z, c->st.base);
}

GroupElement label_element(const Group& gxg, const PauliOperator& s) {
    const Eigen::Index m = s.group().factor_count();
    IntVec v(2 * m);
    v.head(m) = s.z.residues();
    v.tail(m) = s.x.residues();
    return GroupElement(gxg, std::move(v));
}

std::vector<PauliOperator> centralizer(const StabilizerGroup& s, const PauliOperator& t) {
    require_same_group(s.group(), t.group());
    const Group& g = s.group();
    const std::vector<PauliOperator>& gens = s.generators();
    const Eigen::Index r = static_cast<Eigen::Index>(gens.size());
    if (r == 0) return {};
    // prod sigma_i^{c_i} commutes with t iff sum c_i e_i = 0 mod 2|G|, where
    // gamma^{e_i} is the commutator phase of sigma_i with t.
    IntMat A(1, r);
    for (Eigen::Index i = 0; i < r; ++i)
        A(0, i) = (character_exp(gens[static_cast<size_t>(i)].z, t.x) -
                   character_exp(t.z, gens[static_cast<size_t>(i)].x))
                      .exponent();
    Group phases(IntVec::Constant(1, g.phase_modulus()));
    auto sol = solve_system(Group::integer_lattice(r), phases, A,
                            GroupElement::zero(phases));
    std::vector<PauliOperator> out;
    for (const GroupElement& w : sol->kernel_gens)
        out.push_back(generator_product(gens, g, w.residues()));
    return out;
}

StabilizerGroup reduce_generators(const StabilizerGroup& s) {
    // Build the label subgroup directly: going through the analysis cache
    // would compute far more than needed for a throwaway group.
    const Group gxg = Group::product(s.group(), s.group());
    SubgroupGens labels{gxg, {}};
    for (const PauliOperator& p : s.generators())
        labels.generators.push_back(label_element(gxg, p));
    IndependentGens ig = independent_generators_with_weights(labels);
    std::vector<PauliOperator> out;
    for (Eigen::Index j = 0; j < ig.weights.cols(); ++j)
        out.push_back(generator_product(s.generators(), s.group(), ig.weights.col(j)));
    return StabilizerGroup::unchecked(s.group(), std::move(out));
}

OutcomeSet outcome_set(const StabilizerGroup& s, const PauliOperator& t) {
    require_same_group(s.group(), t.group());
    const Group& g = s.group();
    const Int n = operator_order(t);
    const SubgroupGens& labels = s.label_subgroup();
    const Group& gxg = labels.group;

    // M = least k >= 1 with k * label(t) in the label subgroup: gcd of the
    // first coordinates of the kernel of (k, w) -> k*label(t) - sum w_i l_i.
    const Eigen::Index r = static_cast<Eigen::Index>(labels.generators.size());
    IntMat A(gxg.factor_count(), 1 + r);
    A.col(0) = label_element(gxg, t).residues();
    for (Eigen::Index j = 0; j < r; ++j)
        A.col(1 + j) = -labels.generators[static_cast<size_t>(j)].residues();
    auto sol = solve_system(Group::integer_lattice(1 + r), gxg, A,
                            GroupElement::zero(gxg));
    Int m = 0;
    for (const GroupElement& w : sol->kernel_gens) m = gcd(m, w.residue(0));
    m = gcd(m, n);

    // t^M acts on the state as a scalar gamma^c; the achievable eigenvalue
    // indices are the solutions of (2|G|/N) M j = c (mod 2|G|).
    auto c = s.expectation(power(t, m));
    if (!c) throw std::logic_error("outcome_set: t^M has zero expectation");
    const Int& two_n = g.phase_modulus();
    const Int step = exact_div(two_n, n);
    const Int a = step * m;
    if (!divides(a, c->exponent()))
        throw std::logic_error("outcome_set: unsolvable eigenvalue congruence");
    const Int stride = exact_div(n, m);
    return {n, m, mod(exact_div(c->exponent(), a), stride), stride};
}

MeasurementOutcome measurement_branch(const StabilizerGroup& s, const PauliOperator& t,
                                      const OutcomeSet& outcomes, const Int& l) {
    const Int& two_n = s.group().phase_modulus();
    const Int step = exact_div(two_n, outcomes.order);
    const Int j = outcomes.j0 + outcomes.stride * l;
    PhaseExp lambda(step * j, two_n);
    // New stabilizer element: conj(lambda) * t.
    PauliOperator projected{t.a - lambda, t.z, t.x};
    std::vector<PauliOperator> gens = centralizer(s, t);
    gens.insert(gens.begin(), std::move(projected));
    StabilizerGroup post =
        reduce_generators(StabilizerGroup::unchecked(s.group(), std::move(gens)));
    return {std::move(lambda), Rat(1, outcomes.count), std::move(post)};
}

MeasurementOutcome measure_pauli(const StabilizerGroup& s, const PauliOperator& t,
                                 CounterRng& rng) {
    OutcomeSet os = outcome_set(s, t);
    return measurement_branch(s, t, os, rng.below(os.count));
}

std::vector<MeasurementOutcome> enumerate_outcomes(const StabilizerGroup& s,
                                                   const PauliOperator& t) {
    OutcomeSet os = outcome_set(s, t);
    if (!os.count.fits_slong_p())
        throw std::domain_error("enumerate_outcomes: too many outcomes");
    std::vector<MeasurementOutcome> out;
    for (long l = 0; l < os.count.get_si(); ++l)
        out.push_back(measurement_branch(s, t, os, l));
    return out;
}

}  // namespace abstab
