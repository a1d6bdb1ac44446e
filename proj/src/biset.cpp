#include "biset/biset.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "biset/cache.hpp"

namespace biset {

  namespace {
    Subgroup from_mask(std::size_t universe, ElementSet const& mask) {
      std::vector<Element> elts;
      for (Element x = 0; x < universe; ++x) {
        if (mask.test(x)) {
          elts.push_back(x);
        }
      }
      return Subgroup(universe, std::move(elts));
    }

    struct Projections {
      Subgroup p1, p2, k1, k2;
    };

    Projections projections(FiniteGroup const& g, FiniteGroup const& h, Subgroup const& l) {
      std::size_t const nh = h.order();
      ElementSet        p1(g.order()), p2(nh), k1(g.order()), k2(nh);
      for (Element x : l.elements()) {
        Element a = x / static_cast<Element>(nh), b = x % static_cast<Element>(nh);
        p1.set(a);
        p2.set(b);
        if (b == 0) {
          k1.set(a);
        }
        if (a == 0) {
          k2.set(b);
        }
      }
      return {from_mask(g.order(), p1), from_mask(nh, p2), from_mask(g.order(), k1),
              from_mask(nh, k2)};
    }

    std::size_t lattice_index(SubgroupLattice const& lat, Subgroup const& s) {
      auto idx = lat.find(s);
      if (!idx) {
        throw std::logic_error("subgroup missing from lattice");
      }
      return *idx;
    }

    // Position of each parent element in an embedding (or -1).
    std::vector<std::int64_t> positions(std::size_t parent_order,
                                        std::vector<Element> const& embedding) {
      std::vector<std::int64_t> pos(parent_order, -1);
      for (std::size_t i = 0; i < embedding.size(); ++i) {
        pos[embedding[i]] = static_cast<std::int64_t>(i);
      }
      return pos;
    }

    struct UnionFind {
      std::vector<std::uint32_t> parent;
      explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
      }
      std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
          parent[x] = parent[parent[x]];
          x         = parent[x];
        }
        return x;
      }
      void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
          parent[std::max(a, b)] = std::min(a, b);
        }
      }
    };

    // Coset id of every element of P under right multiplication by S.
    std::vector<std::uint32_t> left_cosets(FiniteGroup const& p, Subgroup const& s,
                                           std::vector<Element>& reps) {
      std::vector<std::uint32_t> id(p.order(), UINT32_MAX);
      for (Element x = 0; x < p.order(); ++x) {
        if (id[x] != UINT32_MAX) {
          continue;
        }
        auto const c = static_cast<std::uint32_t>(reps.size());
        reps.push_back(x);
        for (Element y : s.elements()) {
          id[p.mul(x, y)] = c;
        }
      }
      return id;
    }
  }  // namespace

  BisetSpace::BisetSpace(GroupPtr left, GroupPtr right, Budget const& budget)
      : left_(std::move(left)), right_(std::move(right)) {
    product_       = direct_product(left_, right_);
    lattice_       = subgroup_lattice(product_, budget);
    left_lattice_  = subgroup_lattice(left_, budget);
    right_lattice_ = subgroup_lattice(right_, budget);
    std::size_t const nh = right_->order(), ng = left_->order();
    for (std::size_t c = 0; c < lattice_->classes.size(); ++c) {
      std::size_t const sub = lattice_->classes[c].representative();
      Subgroup const&   l   = lattice_->subgroups[sub];
      labels_.push_back(sub);
      Projections pr = projections(*left_, *right_, l);
      LabelData   d;
      d.p1 = lattice_index(*left_lattice_, pr.p1);
      d.p2 = lattice_index(*right_lattice_, pr.p2);
      d.k1 = lattice_index(*left_lattice_, pr.k1);
      d.k2 = lattice_index(*right_lattice_, pr.k2);
      d.offset.assign(ng + 1, 0);
      for (Element x : l.elements()) {
        Element a = x / static_cast<Element>(nh), b = x % static_cast<Element>(nh);
        d.pairs.emplace_back(a, b);
        ++d.offset[a + 1];
      }
      std::partial_sum(d.offset.begin(), d.offset.end(), d.offset.begin());
      d.right_of.resize(l.size());
      std::vector<std::uint32_t> fill(d.offset.begin(), d.offset.end() - 1);
      for (auto [a, b] : d.pairs) {
        d.right_of[fill[a]++] = b;
      }
      sizes_.push_back({l.size(), pr.p1.size(), pr.p2.size(), pr.k1.size(), pr.k2.size(),
                        pr.p1.size() / pr.k1.size()});
      data_.push_back(std::move(d));
    }
  }

  std::size_t BisetSpace::index_of_mask(ElementSet const& mask) const {
    auto it = lattice_->index.find(mask);
    if (it == lattice_->index.end()) {
      throw PreconditionError("not a subgroup of " + product_->name());
    }
    return lattice_->class_of[it->second];
  }

  std::size_t BisetSpace::index_of(Subgroup const& l) const {
    return index_of_mask(l.mask());
  }

  std::size_t BisetSpace::identity_index() const {
    if (!same_group(*left_, *right_)) {
      throw PreconditionError("identity label needs a square space");
    }
    ElementSet diag(product_->order());
    for (Element g = 0; g < left_->order(); ++g) {
      diag.set(pair(g, g));
    }
    return index_of_mask(diag);
  }

  SpacePtr biset_space(GroupPtr const& left, GroupPtr const& right, Budget const& budget) {
    static std::mutex                                      mutex;
    static std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<SpacePtr>> memo;
    auto const key = std::make_pair(left->content_hash(), right->content_hash());
    {
      std::lock_guard lock(mutex);
      for (auto const& s : memo[key]) {
        if (same_group(*s->left(), *left) && same_group(*s->right(), *right)) {
          return s;
        }
      }
    }
    auto space = std::make_shared<BisetSpace const>(left, right, budget);
    if (!cache_directory().empty()
        && !load_basis_file(cache_directory(), *left, *right).has_value()) {
      BasisRecord record;
      for (std::size_t i = 0; i < space->size(); ++i) {
        record.labels.push_back(space->label(i));
        record.sizes.push_back(space->sizes(i));
      }
      save_basis_file(cache_directory(), *left, *right, record);
    }
    std::lock_guard lock(mutex);
    memo[key].push_back(space);
    return space;
  }

  SpacePtr canonical_basis(GroupPtr const& left, GroupPtr const& right, FieldSpec const&,
                           Budget const& budget) {
    return biset_space(left, right, budget);
  }

  ProductInvariants product_invariants(FiniteGroup const& g, FiniteGroup const& h,
                                       Subgroup const& l) {
    Projections const pr = projections(g, h, l);
    std::size_t const nh = h.order(), n = l.size();
    auto const&       el = l.elements();
    std::vector<std::int64_t> pos(g.order() * nh, -1);
    for (std::size_t i = 0; i < n; ++i) {
      pos[el[i]] = static_cast<std::int64_t>(i);
    }
    std::vector<Element> table(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Element a = g.mul(el[i] / nh, el[j] / nh), b = h.mul(el[i] % nh, el[j] % nh);
        table[i * n + j] = static_cast<Element>(pos[a * nh + b]);
      }
    }
    auto                 lg = std::make_shared<FiniteGroup const>("L", n, std::move(table));
    std::vector<Element> kernel;
    for (std::size_t i = 0; i < n; ++i) {
      if (pr.k1.contains(static_cast<Element>(el[i] / nh))
          && pr.k2.contains(static_cast<Element>(el[i] % nh))) {
        kernel.push_back(static_cast<Element>(i));
      }
    }
    GroupPtr q = quotient_group(*lg, Subgroup(n, kernel), "q(L)").group;
    return {pr.p1, pr.k1, pr.p2, pr.k2, q};
  }

  Subgroup star(FiniteGroup const& g, FiniteGroup const& h, FiniteGroup const& k,
                Subgroup const& l, Subgroup const& m) {
    std::size_t const nh = h.order(), nk = k.order();
    ElementSet        out(g.order() * nk);
    for (Element x : l.elements()) {
      for (Element y : m.elements()) {
        if (x % nh == y / nk) {
          out.set(static_cast<Element>((x / nh) * nk + y % nk));
        }
      }
    }
    Subgroup s = from_mask(g.order() * nk, out);
    return s;
  }

  // Composer

  Composer::Composer(SpacePtr gh, SpacePtr hk, SpacePtr gk)
      : gh_(std::move(gh)), hk_(std::move(hk)), gk_(std::move(gk)) {
    if (!same_group(*gh_->right(), *hk_->left()) || !same_group(*gh_->left(), *gk_->left())
        || !same_group(*hk_->right(), *gk_->right())) {
      throw PreconditionError("composition of bisets over mismatched groups");
    }
  }

  Composer::Composer(SpacePtr gh, SpacePtr hk)
      : Composer(gh, hk, biset_space(gh->left(), hk->right())) {}

  std::vector<Element> const& Composer::reps(std::size_t a, std::size_t b) {
    auto const&         lat = *gh_->right_lattice();
    std::uint64_t const key = a * lat.subgroups.size() + b;
    auto                it  = dc_cache_.find(key);
    if (it == dc_cache_.end()) {
      it = dc_cache_
               .emplace(key, double_coset_reps(*gh_->right(), lat.subgroups[a], lat.subgroups[b]))
               .first;
    }
    return it->second;
  }

  std::size_t Composer::term_count(std::size_t i, std::size_t j) {
    return reps(gh_->data(i).p2, hk_->data(j).p1).size();
  }

  LabelCounts Composer::compose(std::size_t i, std::size_t j) {
    LabelData const&   l  = gh_->data(i);
    LabelData const&   m  = hk_->data(j);
    FiniteGroup const& h  = *gh_->right();
    Element const      nk = static_cast<Element>(hk_->right()->order());
    std::size_t const  universe = gk_->product()->order();
    LabelCounts        out;
    for (Element t : reps(l.p2, m.p1)) {
      // L * (t,1)M: (g, k) with (g, h) in L and (t^-1 h t, k) in M
      ElementSet    mask(universe);
      Element const ti = h.inv(t);
      for (auto [g, hh] : l.pairs) {
        Element const c = h.mul(h.mul(ti, hh), t);
        for (std::uint32_t q = m.offset[c]; q < m.offset[c + 1]; ++q) {
          mask.set(g * nk + m.right_of[q]);
        }
      }
      auto const label = static_cast<std::uint32_t>(gk_->index_of_mask(mask));
      auto it = std::lower_bound(out.begin(), out.end(), label,
                                 [](auto const& e, std::uint32_t v) { return e.first < v; });
      if (it != out.end() && it->first == label) {
        ++it->second;
      } else {
        out.insert(it, {label, 1});
      }
    }
    return out;
  }

  LabelCounts mackey_compose(SpacePtr const& gh, std::size_t i, SpacePtr const& hk,
                             std::size_t j) {
    Composer c(gh, hk);
    return c.compose(i, j);
  }

  // BisetElement

  BisetElement BisetElement::basis(SpacePtr space, FieldSpec field, std::size_t label) {
    return basis(std::move(space), field, label, Scalar(field, 1));
  }

  BisetElement BisetElement::basis(SpacePtr space, FieldSpec field, std::size_t label,
                                   Scalar const& coeff) {
    BisetElement e(std::move(space), field);
    e.add(label, coeff);
    return e;
  }

  Scalar BisetElement::coefficient(std::size_t label) const {
    auto it = terms_.find(static_cast<std::uint32_t>(label));
    return it == terms_.end() ? Scalar(field_, 0) : it->second;
  }

  void BisetElement::add(std::size_t label, Scalar const& c) {
    if (!(c.field() == field_)) {
      throw PreconditionError("coefficient field does not match the element's field");
    }
    if (label >= space_->size()) {
      throw PreconditionError("label index out of range");
    }
    auto   key = static_cast<std::uint32_t>(label);
    auto   it  = terms_.find(key);
    Scalar v   = it == terms_.end() ? c : it->second + c;
    if (v.is_zero()) {
      if (it != terms_.end()) {
        terms_.erase(it);
      }
    } else {
      terms_[key] = v;
    }
  }

  BisetElement BisetElement::operator+(BisetElement const& o) const {
    if (!same_group(*space_->left(), *o.space_->left())
        || !same_group(*space_->right(), *o.space_->right()) || !(field_ == o.field_)) {
      throw PreconditionError("sum of biset elements from different spaces");
    }
    BisetElement r = *this;
    for (auto const& [k, v] : o.terms_) {
      r.add(k, v);
    }
    return r;
  }

  BisetElement BisetElement::operator*(Scalar const& c) const {
    BisetElement r(space_, field_);
    for (auto const& [k, v] : terms_) {
      r.add(k, v * c);
    }
    return r;
  }

  bool BisetElement::operator==(BisetElement const& o) const {
    return same_group(*space_->left(), *o.space_->left())
           && same_group(*space_->right(), *o.space_->right()) && field_ == o.field_
           && terms_ == o.terms_;
  }

  BisetElement compose(BisetElement const& x, BisetElement const& y) {
    if (!(x.field() == y.field())) {
      throw PreconditionError("composition over different fields");
    }
    Composer     c(x.space(), y.space());
    BisetElement r(c.target(), x.field());
    for (auto const& [i, a] : x.terms()) {
      for (auto const& [j, b] : y.terms()) {
        Scalar const ab = a * b;
        for (auto const& [label, count] : c.compose(i, j)) {
          r.add(label, ab * Scalar(x.field(), static_cast<long long>(count)));
        }
      }
    }
    return r;
  }

  BisetElement identity_element(GroupPtr const& g, FieldSpec field) {
    SpacePtr s = biset_space(g, g);
    return BisetElement::basis(s, field, s->identity_index());
  }

  // Elementary bisets

  namespace {
    ElementaryBiset graph_label(ElementaryBiset::Kind kind, GroupPtr const& left,
                                GroupPtr const& right,
                                std::vector<std::pair<Element, Element>> const& pairs) {
      SpacePtr   s = biset_space(left, right);
      ElementSet mask(s->product()->order());
      for (auto [a, b] : pairs) {
        mask.set(s->pair(a, b));
      }
      return {kind, s, s->index_of_mask(mask)};
    }
  }  // namespace

  std::string ElementaryBiset::describe() const {
    static char const* names[] = {"Ind", "Res", "Inf", "Def", "Iso"};
    return std::string(names[static_cast<int>(kind)]) + "(" + space->left()->name() + " <- "
           + space->right()->name() + ")";
  }

  ElementaryBiset induction(GroupPtr const& g, Embedded const& h) {
    std::vector<std::pair<Element, Element>> pairs;
    for (std::size_t i = 0; i < h.embedding.size(); ++i) {
      pairs.emplace_back(h.embedding[i], static_cast<Element>(i));
    }
    return graph_label(ElementaryBiset::Kind::Ind, g, h.group, pairs);
  }

  ElementaryBiset restriction(GroupPtr const& g, Embedded const& h) {
    std::vector<std::pair<Element, Element>> pairs;
    for (std::size_t i = 0; i < h.embedding.size(); ++i) {
      pairs.emplace_back(static_cast<Element>(i), h.embedding[i]);
    }
    return graph_label(ElementaryBiset::Kind::Res, h.group, g, pairs);
  }

  ElementaryBiset inflation(GroupPtr const& g, Quotient const& q) {
    std::vector<std::pair<Element, Element>> pairs;
    for (Element x = 0; x < g->order(); ++x) {
      pairs.emplace_back(x, q.projection[x]);
    }
    return graph_label(ElementaryBiset::Kind::Inf, g, q.group, pairs);
  }

  ElementaryBiset deflation(GroupPtr const& g, Quotient const& q) {
    std::vector<std::pair<Element, Element>> pairs;
    for (Element x = 0; x < g->order(); ++x) {
      pairs.emplace_back(q.projection[x], x);
    }
    return graph_label(ElementaryBiset::Kind::Def, q.group, g, pairs);
  }

  ElementaryBiset isogation(GroupPtr const& target, GroupPtr const& h,
                            std::vector<Element> const& alpha) {
    if (!is_isomorphism(*h, *target, alpha)) {
      throw PreconditionError("Iso needs an isomorphism");
    }
    std::vector<std::pair<Element, Element>> pairs;
    for (Element x = 0; x < h->order(); ++x) {
      pairs.emplace_back(alpha[x], x);
    }
    return graph_label(ElementaryBiset::Kind::Iso, target, h, pairs);
  }

  std::array<ElementaryBiset, 5> butterfly_factorize(SpacePtr const& space, std::size_t label) {
    GroupPtr const&  g  = space->left();
    GroupPtr const&  h  = space->right();
    LabelData const& d  = space->data(label);
    Subgroup const&  p1 = space->left_lattice()->subgroups[d.p1];
    Subgroup const&  k1 = space->left_lattice()->subgroups[d.k1];
    Subgroup const&  p2 = space->right_lattice()->subgroups[d.p2];
    Subgroup const&  k2 = space->right_lattice()->subgroups[d.k2];

    auto relative = [](Embedded const& e, Subgroup const& k) {
      std::vector<Element> inside;
      for (std::size_t i = 0; i < e.embedding.size(); ++i) {
        if (k.contains(e.embedding[i])) {
          inside.push_back(static_cast<Element>(i));
        }
      }
      return Subgroup(e.group->order(), inside);
    };
    Embedded e1 = subgroup_as_group(*g, p1);
    Embedded e2 = subgroup_as_group(*h, p2);
    Quotient q1 = quotient_group(*e1.group, relative(e1, k1));
    Quotient q2 = quotient_group(*e2.group, relative(e2, k2));

    // alpha(h k2) = g k1 for (g, h) in L
    auto const           pos1 = positions(g->order(), e1.embedding);
    auto const           pos2 = positions(h->order(), e2.embedding);
    std::vector<Element> alpha(q2.group->order(), 0);
    for (auto [a, b] : d.pairs) {
      alpha[q2.projection[pos2[b]]] = q1.projection[pos1[a]];
    }
    return {induction(g, e1), inflation(e1.group, q1), isogation(q1.group, q2.group, alpha),
            deflation(e2.group, q2), restriction(h, e2)};
  }

  BisetElement compose_factors(std::array<ElementaryBiset, 5> const& factors, FieldSpec field) {
    BisetElement acc = factors[0].element(field);
    for (std::size_t i = 1; i < factors.size(); ++i) {
      acc = compose(acc, factors[i].element(field));
    }
    return acc;
  }

  LabelCounts realize_and_compose_oracle(SpacePtr const& gh, std::size_t i, SpacePtr const& hk,
                                         std::size_t j, SpacePtr const& gk) {
    FiniteGroup const& g  = *gh->left();
    FiniteGroup const& h  = *gh->right();
    FiniteGroup const& k  = *hk->right();
    Element const      nh = static_cast<Element>(h.order()), nk = static_cast<Element>(k.order());

    // U = (G x H)/L and V = (H x K)/M as coset tables
    std::vector<Element> ureps, vreps;
    auto const           uid = left_cosets(*gh->product(), gh->label(i), ureps);
    auto const           vid = left_cosets(*hk->product(), hk->label(j), vreps);
    std::size_t const    nu = ureps.size(), nv = vreps.size();

    // u . b = (g, b^-1 h1) L and a . u = (a g, h1) L
    auto u_right = [&](std::uint32_t u, Element b) {
      Element x = ureps[u];
      return uid[(x / nh) * nh + h.mul(h.inv(b), x % nh)];
    };
    auto u_left = [&](Element a, std::uint32_t u) {
      Element x = ureps[u];
      return uid[g.mul(a, x / nh) * nh + x % nh];
    };
    // h . v = (h h2, k) M and v . c = (h2, c^-1 k) M
    auto v_left = [&](Element b, std::uint32_t v) {
      Element x = vreps[v];
      return vid[h.mul(b, x / nk) * nk + x % nk];
    };
    auto v_right = [&](std::uint32_t v, Element c) {
      Element x = vreps[v];
      return vid[(x / nk) * nk + k.mul(k.inv(c), x % nk)];
    };

    // H-orbits on U x V under b . (u, v) = (u b^-1, b v)
    UnionFind uf(nu * nv);
    for (std::uint32_t u = 0; u < nu; ++u) {
      for (std::uint32_t v = 0; v < nv; ++v) {
        for (Element b : h.generators()) {
          uf.unite(static_cast<std::uint32_t>(u * nv + v),
                   static_cast<std::uint32_t>(u_right(u, h.inv(b)) * nv + v_left(b, v)));
        }
      }
    }
    // (a, c) . [(u, v)] = [(a u, v c^-1)]
    auto act = [&](Element a, Element c, std::uint32_t point) {
      std::uint32_t u = point / static_cast<std::uint32_t>(nv);
      std::uint32_t v = point % static_cast<std::uint32_t>(nv);
      return uf.find(static_cast<std::uint32_t>(u_left(a, u) * nv + v_right(v, k.inv(c))));
    };

    std::vector<char> seen(nu * nv, 0);
    LabelCounts       counts;
    std::vector<std::pair<Element, Element>> gens;
    for (Element a : g.generators()) {
      gens.emplace_back(a, 0);
    }
    for (Element c : k.generators()) {
      gens.emplace_back(0, c);
    }
    for (std::uint32_t p = 0; p < nu * nv; ++p) {
      std::uint32_t root = uf.find(p);
      if (seen[root]) {
        continue;
      }
      // the G x K-orbit of this H-orbit
      std::vector<std::uint32_t> queue{root};
      seen[root] = 1;
      for (std::size_t q = 0; q < queue.size(); ++q) {
        for (auto [a, c] : gens) {
          std::uint32_t nxt = act(a, c, queue[q]);
          if (!seen[nxt]) {
            seen[nxt] = 1;
            queue.push_back(nxt);
          }
        }
      }
      std::vector<Element> stab;
      for (Element a = 0; a < g.order(); ++a) {
        for (Element c = 0; c < nk; ++c) {
          if (act(a, c, root) == root) {
            stab.push_back(a * nk + c);
          }
        }
      }
      auto label = static_cast<std::uint32_t>(
          gk->index_of(Subgroup(gk->product()->order(), std::move(stab))));
      auto it = std::lower_bound(counts.begin(), counts.end(), label,
                                 [](auto const& e, std::uint32_t v) { return e.first < v; });
      if (it != counts.end() && it->first == label) {
        ++it->second;
      } else {
        counts.insert(it, {label, 1});
      }
    }
    return counts;
  }

  std::uint64_t label_trace(BisetSpace const& space, std::size_t label) {
    if (!same_group(*space.left(), *space.right())) {
      throw PreconditionError("trace of a non-square biset");
    }
    ElementSet diag(space.product()->order());
    for (Element g = 0; g < space.left()->order(); ++g) {
      diag.set(space.pair(g, g));
    }
    Subgroup d = from_mask(space.product()->order(), diag);
    return double_coset_reps(*space.product(), d, space.label(label)).size();
  }

  Scalar trace_map(BisetElement const& x) {
    Scalar t(x.field(), 0);
    for (auto const& [label, c] : x.terms()) {
      t += c * Scalar(x.field(), static_cast<long long>(label_trace(*x.space(), label)));
    }
    return t;
  }

  bool is_left_free(BisetSpace const& space, std::size_t label) {
    return space.sizes(label)[3] == 1;
  }

}  // namespace biset
