#ifndef OPNIL_CONSEQUENCE_HPP
#define OPNIL_CONSEQUENCE_HPP

#include <numeric>
#include <string>
#include <vector>

#include "opnil/identities.hpp"
#include "opnil/linalg.hpp"
#include "opnil/magma.hpp"
#include "opnil/occurrence.hpp"
#include "opnil/syntax.hpp"

namespace opnil {

// How variables may enter consequence rows.
//   Ordered:     noncommutative trees, variables in natural order only
//                (the nonsymmetric-operad component; cross-checks rewriting)
//   Symmetric:   noncommutative trees, all variable assignments
//   Commutative: commutative trees, all variable assignments
enum class OracleMode { Ordered, Symmetric, Commutative };

inline bool mode_commutative(OracleMode m) { return m == OracleMode::Commutative; }

struct OracleLimits {
  std::size_t max_nonzeros = 2'000'000;
};

// Row-reduced span of every multilinear consequence of the generators at one
// arity: each row is a generator with magma monomials substituted into its
// slots, grafted into a leaf of a scaffold monomial, under every admissible
// variable assignment.
class ConsequenceSpace {
public:
  ConsequenceSpace(int k, std::size_t arity, OracleMode mode)
      : k_(k), arity_(arity), mode_(mode) {
    if (mode == OracleMode::Ordered) {
      // Natural-order component only: one column per planar tree.
      std::vector<int> labels(arity);
      std::iota(labels.begin(), labels.end(), 1);
      for (const TreeMonomial& m : detail::monomials_unsorted(k, arity))
        columns_.push_back(LabeledTree::from_monomial(m, labels, false));
    } else {
      columns_ = enumerate_labeled(k, arity, mode_commutative(mode));
    }
    for (std::size_t i = 0; i < columns_.size(); ++i) col_of_.emplace(columns_[i], i);
  }

  int k() const { return k_; }
  std::size_t arity() const { return arity_; }
  OracleMode mode() const { return mode_; }
  std::size_t dimension() const { return columns_.size(); }
  std::size_t rank() const { return ech_.rank(); }
  const std::vector<LabeledTree>& columns() const { return columns_; }
  const std::vector<std::string>& generation_log() const { return log_; }

  SparseRow row_of(const MagmaElement& e) const {
    if (e.k() != k_ || e.arity() != arity_ ||
        e.commutative() != mode_commutative(mode_))
      fail(ErrorKind::Arity, "element does not live in this consequence space's component");
    SparseRow row;
    for (const auto& [t, c] : e.terms()) {
      auto it = col_of_.find(t);
      if (it == col_of_.end()) fail(ErrorKind::Input, "monomial outside the component basis");
      row.emplace_back(it->second, c);
    }
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return row;
  }

  bool member(const MagmaElement& e) const { return ech_.contains(row_of(e)); }

  bool insert(const MagmaElement& e, std::string log_entry) {
    bool grew = ech_.insert(row_of(e));
    log_.push_back(std::move(log_entry));
    return grew;
  }

  const EchelonForm& echelon() const { return ech_; }

private:
  int k_;
  std::size_t arity_;
  OracleMode mode_;
  std::vector<LabeledTree> columns_;
  std::map<LabeledTree, std::size_t> col_of_;
  EchelonForm ech_;
  std::vector<std::string> log_;
};

namespace detail {

// Structure of one substitution site: scaffold with a distinguished leaf and
// one filler shape per generator slot.
struct Placement {
  TreeMonomial scaffold;
  std::size_t leaf; // 1-based
  std::vector<TreeMonomial> fillers;
};

inline void enumerate_placements(int k, std::size_t gen_arity, std::size_t total,
                                 std::vector<Placement>& out) {
  for (std::size_t c = 1; c <= total; c += (k - 1)) {
    // (c - 1) + sum(filler arities) = total
    std::size_t filler_total = total - c + 1;
    if (filler_total < gen_arity) continue;
    std::vector<std::size_t> parts(gen_arity, 0);
    auto split = [&](auto&& self, std::size_t slot, std::size_t remaining) -> void {
      if (slot + 1 == gen_arity) {
        if (!arity_compatible(k, remaining)) return;
        parts[slot] = remaining;
        std::vector<std::vector<TreeMonomial>> options;
        for (std::size_t s = 0; s < gen_arity; ++s)
          options.push_back(monomials_unsorted(k, parts[s]));
        for (const TreeMonomial& scaf : monomials_unsorted(k, c)) {
          for (std::size_t leaf = 1; leaf <= c; ++leaf) {
            std::vector<std::size_t> pick(gen_arity, 0);
            while (true) {
              Placement p{scaf, leaf, {}};
              for (std::size_t s = 0; s < gen_arity; ++s) p.fillers.push_back(options[s][pick[s]]);
              out.push_back(std::move(p));
              std::size_t i = 0;
              for (; i < gen_arity; ++i) {
                if (++pick[i] < options[i].size()) break;
                pick[i] = 0;
              }
              if (i == gen_arity) break;
            }
          }
        }
        return;
      }
      std::size_t left = gen_arity - slot - 1;
      for (std::size_t ni = 1; ni + left <= remaining; ni += (k - 1)) {
        parts[slot] = ni;
        self(self, slot + 1, remaining - ni);
      }
    };
    split(split, 0, filler_total);
  }
}

// Composite tree of one generator term under a placement, carrying stable
// substitution-site labels: scaffold leaves and filler leaves keep the same
// label across every term of the generator, so one variable assignment stays
// consistent over a whole row. Site labels are laid out scaffold-leaves
// first, then filler blocks in slot order.
struct SiteLayout {
  std::vector<int> scaffold_ids; // one per scaffold leaf; 0 at the grafted leaf
  std::vector<std::vector<int>> filler_ids;
  std::size_t total = 0;
};

inline SiteLayout site_layout(const Placement& p) {
  // Ids follow the composite's leaf order for an identity-labeled generator:
  // scaffold leaves left of the graft, then the filler blocks, then the rest.
  SiteLayout layout;
  int next = 1;
  layout.scaffold_ids.resize(p.scaffold.arity(), 0);
  for (std::size_t l = 1; l < p.leaf; ++l) layout.scaffold_ids[l - 1] = next++;
  for (const TreeMonomial& f : p.fillers) {
    std::vector<int> ids(f.arity());
    for (auto& id : ids) id = next++;
    layout.filler_ids.push_back(std::move(ids));
  }
  for (std::size_t l = p.leaf + 1; l <= p.scaffold.arity(); ++l)
    layout.scaffold_ids[l - 1] = next++;
  layout.total = static_cast<std::size_t>(next - 1);
  return layout;
}

// gen_term with filler trees substituted into its slots (slot j = the leaf
// labeled j), grafted into the scaffold's distinguished leaf; leaves carry
// the site labels of the layout.
inline LabeledTree composite_labeled(const Placement& p, const SiteLayout& layout,
                                     const LabeledTree& gen_term, bool commutative) {
  int k = gen_term.k();
  std::vector<LabeledTree> fillers;
  for (std::size_t j = 0; j < p.fillers.size(); ++j)
    fillers.push_back(
        LabeledTree::from_monomial(p.fillers[j], layout.filler_ids[j], commutative));

  auto plug = [&](auto&& self, const LabeledTree& t) -> LabeledTree {
    if (t.is_leaf()) return fillers.at(t.encoding()[0] - 1);
    std::vector<LabeledTree> kids;
    for (const LabeledTree& c : t.children()) kids.push_back(self(self, c));
    return LabeledTree::node(std::move(kids));
  };
  LabeledTree inner = plug(plug, gen_term);

  // Rebuild the scaffold around it.
  const auto& shape = p.scaffold.shape();
  std::size_t leaf_no = 0;
  auto walk = [&](auto&& self, std::size_t pos) -> std::pair<LabeledTree, std::size_t> {
    if (shape[pos] == TreeMonomial::kLeaf) {
      ++leaf_no;
      if (leaf_no == p.leaf) return {inner, pos + 1};
      return {LabeledTree::leaf(k, commutative, layout.scaffold_ids[leaf_no - 1]), pos + 1};
    }
    std::vector<LabeledTree> kids;
    std::size_t q = pos + 1;
    for (int c = 0; c < k; ++c) {
      auto [child, nq] = self(self, q);
      kids.push_back(std::move(child));
      q = nq;
    }
    return {LabeledTree::node(std::move(kids)), q};
  };
  return walk(walk, 0).first;
}

} // namespace detail

// Spanning generation: every placement of every generator, under every
// admissible variable assignment, inserted into the echelon form. The row
// space is the arity-n multilinear consequence space of the generators.
inline ConsequenceSpace consequence_space(const std::vector<MagmaElement>& generators,
                                          std::size_t n, OracleMode mode,
                                          const OracleLimits& limits = OracleLimits{}) {
  if (generators.empty()) {
    if (!arity_compatible(2, n)) fail(ErrorKind::Arity, "arity incompatible");
    return ConsequenceSpace(2, n, mode);
  }
  int k = generators.front().k();
  bool comm = mode_commutative(mode);
  for (const auto& g : generators) {
    if (g.k() != k) fail(ErrorKind::Arity, "generators disagree on k");
    if (g.commutative() != comm)
      fail(ErrorKind::Arity, "generator flavor does not match the oracle mode");
    if (!arity_compatible(k, n) || g.arity() > n || (n - g.arity()) % (k - 1) != 0)
      fail(ErrorKind::Arity, "generator arity incompatible with target arity");
  }

  // Component-size guard before any allocation. The commutative component is
  // smaller than shapes x labelings, so this bound is conservative there.
  Integer dim = fuss_catalan(k, (n - 1) / (k - 1));
  if (mode != OracleMode::Ordered) {
    Integer f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    dim *= f;
  }
  if (dim > Integer(static_cast<unsigned long>(limits.max_nonzeros)))
    fail(ErrorKind::Resource, "consequence space at arity " + std::to_string(n) +
                                  " exceeds the configured bound of " +
                                  std::to_string(limits.max_nonzeros) +
                                  " nonzero entries (component would need " + dim.get_str() +
                                  ")");

  ConsequenceSpace space(k, n, mode);
  std::size_t inserted_nonzeros = 0;

  std::vector<int> assignment(n);
  std::iota(assignment.begin(), assignment.end(), 1);

  for (std::size_t gi = 0; gi < generators.size(); ++gi) {
    const MagmaElement& g = generators[gi];
    std::vector<detail::Placement> placements;
    detail::enumerate_placements(k, g.arity(), n, placements);
    for (std::size_t pi = 0; pi < placements.size(); ++pi) {
      const auto& p = placements[pi];
      detail::SiteLayout layout = detail::site_layout(p);
      // The site-labeled composite of each generator term; one variable
      // assignment then relabels all of them consistently.
      std::vector<std::pair<LabeledTree, Rational>> composites;
      for (const auto& [t, c] : g.terms())
        composites.emplace_back(detail::composite_labeled(p, layout, t, comm), c);

      auto emit = [&](const std::vector<int>& vars) {
        MagmaElement row = MagmaElement::zero(k, n, comm);
        for (const auto& [t, c] : composites) row.add_term(t.relabel(vars), c);
        if (row.is_zero()) return;
        inserted_nonzeros += row.term_count();
        if (inserted_nonzeros > limits.max_nonzeros)
          fail(ErrorKind::Resource,
               "consequence generation exceeded the configured bound of " +
                   std::to_string(limits.max_nonzeros) + " nonzero entries");
        space.insert(row, "gen#" + std::to_string(gi) + " scaffold=" + print(p.scaffold) +
                              " leaf=" + std::to_string(p.leaf) +
                              " placement#" + std::to_string(pi));
      };

      if (mode == OracleMode::Ordered) {
        // Natural order: variables must read a1..an over the composite's
        // leaves; generators are identity-labeled, so the site labels
        // already appear in leaf order and the identity assignment works.
        for (const auto& [t, c] : composites) {
          std::vector<int> in_order = t.labels_in_order();
          for (std::size_t i = 0; i + 1 < in_order.size(); ++i)
            if (in_order[i] > in_order[i + 1])
              fail(ErrorKind::Input,
                   "ordered-mode generators must carry variables in natural order");
        }
        emit(assignment);
      } else {
        std::vector<int> vars = assignment;
        do {
          emit(vars);
        } while (std::next_permutation(vars.begin(), vars.end()));
      }
    }
  }
  return space;
}

inline bool member(const MagmaElement& e, const ConsequenceSpace& space) {
  return space.member(e);
}

// Bridge: a nonsymmetric operad element as an ordered magma element.
inline MagmaElement as_ordered_magma(const OperadElement& e) {
  MagmaElement out = MagmaElement::zero(e.k(), e.arity(), false);
  std::vector<int> labels(e.arity());
  std::iota(labels.begin(), labels.end(), 1);
  for (const auto& [m, c] : e.terms())
    out.add_term(LabeledTree::from_monomial(m, labels, false), c);
  return out;
}

// Structural substitution of a product template into every node of an
// element over an abstract k-ary product, followed by multilinear expansion
// and collection. The template is an element of the target magma on slot
// variables 1..k.
inline MagmaElement expand_substitution(const MagmaElement& e, const MagmaElement& tmpl) {
  if (tmpl.arity() != static_cast<std::size_t>(e.k()))
    fail(ErrorKind::Arity, "template arity must equal the source product arity");
  int tk = tmpl.k();
  bool tcomm = tmpl.commutative();

  auto substitute_slots = [&](auto&& self, const LabeledTree& t,
                              const std::vector<MagmaElement>& parts) -> MagmaElement {
    if (t.is_leaf()) return parts.at(t.encoding()[0] - 1);
    std::vector<MagmaElement> kids;
    for (const LabeledTree& c : t.children()) kids.push_back(self(self, c, parts));
    MagmaElement out = MagmaElement::zero(tk, [&] {
      std::size_t a = 0;
      for (const auto& kd : kids) a += kd.arity();
      return a;
    }(), tcomm);
    std::vector<LabeledTree> chosen;
    Rational coeff = 1;
    auto expand = [&](auto&& eself, std::size_t i, Rational acc) -> void {
      if (i == kids.size()) {
        out.add_term(LabeledTree::node(chosen), acc);
        return;
      }
      for (const auto& [tt, cc] : kids[i].terms()) {
        chosen.push_back(tt);
        eself(eself, i + 1, acc * cc);
        chosen.pop_back();
      }
    };
    expand(expand, 0, coeff);
    return out;
  };

  auto expand_tree = [&](auto&& self, const LabeledTree& t) -> MagmaElement {
    if (t.is_leaf())
      return MagmaElement::monomial(LabeledTree::leaf(tk, tcomm, t.encoding()[0]));
    std::vector<MagmaElement> parts;
    for (const LabeledTree& c : t.children()) parts.push_back(self(self, c));
    MagmaElement out = MagmaElement::zero(tk, t.arity(), tcomm);
    for (const auto& [tt, tc] : tmpl.terms()) {
      MagmaElement piece = substitute_slots(substitute_slots, tt, parts);
      out += tc * piece;
    }
    return out;
  };

  MagmaElement out = MagmaElement::zero(tk, e.arity(), tcomm);
  for (const auto& [t, c] : e.terms()) out += c * expand_tree(expand_tree, t);
  return out;
}

// sum over all slot permutations of one bare k-ary node: the fully
// symmetrized product as a template.
inline MagmaElement symmetrized_product_template(int k) {
  MagmaElement tmpl = MagmaElement::zero(k, k, false);
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    std::vector<LabeledTree> kids;
    for (int l : perm) kids.push_back(LabeledTree::leaf(k, false, l));
    tmpl.add_term(LabeledTree::node(kids), 1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return tmpl;
}

} // namespace opnil

#endif
