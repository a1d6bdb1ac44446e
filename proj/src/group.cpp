#include "biset/group.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace biset {

  Limits& limits() {
    static Limits instance;
    return instance;
  }

  namespace {
    constexpr Element kUnset = static_cast<Element>(-1);

    std::uint64_t fnv1a(std::size_t order, std::vector<Element> const& table) {
      std::uint64_t h    = 14695981039346656037ULL;
      auto          feed = [&h](std::uint64_t v) {
        for (int i = 0; i < 4; ++i) {
          h ^= (v >> (8 * i)) & 0xFF;
          h *= 1099511628211ULL;
        }
      };
      feed(order);
      for (Element x : table) {
        feed(x);
      }
      return h;
    }

    // The same-size lexicographic order on sorted element lists reduces to
    // looking at the least element of the symmetric difference.
    bool lex_less_same_size(ElementSet const& a, ElementSet const& b) {
      auto const& wa = a.words();
      auto const& wb = b.words();
      for (std::size_t i = 0; i < wa.size(); ++i) {
        std::uint64_t diff = wa[i] ^ wb[i];
        if (diff != 0) {
          return (wa[i] >> std::countr_zero(diff)) & 1U;
        }
      }
      return false;
    }

    std::vector<Element> subgroup_generators(FiniteGroup const& g, Subgroup const& s) {
      std::vector<Element> gens;
      Subgroup             cur = trivial_subgroup(g);
      for (Element e : s.elements()) {
        if (!cur.contains(e)) {
          cur = join(g, cur, e);
          gens.push_back(e);
          if (cur.size() == s.size()) {
            break;
          }
        }
      }
      return gens;
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // FiniteGroup
  ////////////////////////////////////////////////////////////////////////

  FiniteGroup::FiniteGroup(std::string name, std::size_t order, std::vector<Element> table)
      : name_(std::move(name)), order_(order), table_(std::move(table)) {
    if (order_ == 0) {
      throw PreconditionError("group order must be positive");
    }
    if (table_.size() != order_ * order_) {
      throw PreconditionError("Cayley table has the wrong size");
    }
    for (Element x : table_) {
      if (x >= order_) {
        throw PreconditionError("Cayley table entry out of range");
      }
    }
    for (Element x = 0; x < order_; ++x) {
      if (mul(0, x) != x || mul(x, 0) != x) {
        throw PreconditionError("element 0 is not a two-sided identity");
      }
    }
    inv_.assign(order_, kUnset);
    for (Element a = 0; a < order_; ++a) {
      for (Element b = 0; b < order_; ++b) {
        if (mul(a, b) == 0) {
          if (mul(b, a) != 0) {
            throw PreconditionError("one-sided inverse in Cayley table");
          }
          inv_[a] = b;
          break;
        }
      }
      if (inv_[a] == kUnset) {
        throw PreconditionError("element without inverse in Cayley table");
      }
    }
    if (order_ <= 64 && !is_associative()) {
      throw PreconditionError("Cayley table is not associative");
    }

    elt_order_.assign(order_, 0);
    for (Element a = 0; a < order_; ++a) {
      std::size_t k = 1;
      for (Element x = a; x != 0; x = mul(x, a)) {
        ++k;
      }
      elt_order_[a] = k;
    }

    centralizer_size_.assign(order_, 0);
    abelian_ = true;
    for (Element a = 0; a < order_; ++a) {
      std::size_t c = 0;
      for (Element b = 0; b < order_; ++b) {
        if (mul(a, b) == mul(b, a)) {
          ++c;
        }
      }
      centralizer_size_[a] = c;
      abelian_             = abelian_ && (c == order_);
    }

    // greedy generating set, largest element order first
    std::vector<Element> by_order(order_);
    std::iota(by_order.begin(), by_order.end(), 0);
    std::stable_sort(by_order.begin(), by_order.end(), [this](Element x, Element y) {
      return elt_order_[x] > elt_order_[y];
    });
    Subgroup cur = trivial_subgroup(*this);
    for (Element x : by_order) {
      if (cur.size() == order_) {
        break;
      }
      if (!cur.contains(x)) {
        cur = join(*this, cur, x);
        gens_.push_back(x);
      }
    }
    hash_ = fnv1a(order_, table_);
  }

  Element FiniteGroup::power(Element a, std::size_t k) const noexcept {
    Element result = 0;
    for (std::size_t i = 0; i < k; ++i) {
      result = mul(result, a);
    }
    return result;
  }

  std::size_t FiniteGroup::exponent() const noexcept {
    std::size_t e = 1;
    for (std::size_t o : elt_order_) {
      e = std::lcm(e, o);
    }
    return e;
  }

  std::vector<Element> FiniteGroup::center() const {
    std::vector<Element> z;
    for (Element a = 0; a < order_; ++a) {
      if (centralizer_size_[a] == order_) {
        z.push_back(a);
      }
    }
    return z;
  }

  std::vector<std::size_t> FiniteGroup::order_histogram() const {
    std::vector<std::size_t> hist(order_ + 1, 0);
    for (std::size_t o : elt_order_) {
      ++hist[o];
    }
    return hist;
  }

  bool FiniteGroup::is_associative() const {
    for (Element a = 0; a < order_; ++a) {
      for (Element b = 0; b < order_; ++b) {
        Element ab = mul(a, b);
        for (Element c = 0; c < order_; ++c) {
          if (mul(ab, c) != mul(a, mul(b, c))) {
            return false;
          }
        }
      }
    }
    return true;
  }

  bool same_group(FiniteGroup const& a, FiniteGroup const& b) noexcept {
    return &a == &b
           || (a.content_hash() == b.content_hash() && a.order() == b.order()
               && a.table() == b.table());
  }

  GroupPtr direct_product(GroupPtr const& g, GroupPtr const& h) {
    std::size_t const ng = g->order(), nh = h->order(), n = ng * nh;
    if (n > limits().max_product_order) {
      throw BudgetExceeded("direct product order " + std::to_string(n)
                               + " exceeds the configured cap "
                               + std::to_string(limits().max_product_order),
                           0);
    }
    std::vector<Element> table(n * n);
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        table[std::size_t{x} * n + y] = g->mul(x / nh, y / nh) * nh + h->mul(x % nh, y % nh);
      }
    }
    return std::make_shared<FiniteGroup const>(g->name() + "x" + h->name(), n, std::move(table));
  }

  GroupPtr cyclic_group(std::size_t n) {
    std::vector<Element> table(n * n);
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        table[std::size_t{x} * n + y] = (x + y) % n;
      }
    }
    return std::make_shared<FiniteGroup const>(n == 1 ? "1" : "C" + std::to_string(n), n,
                                               std::move(table));
  }

  ////////////////////////////////////////////////////////////////////////
  // ElementSet / Subgroup
  ////////////////////////////////////////////////////////////////////////

  bool ElementSet::subset_of(ElementSet const& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & ~other.words_[i]) != 0) {
        return false;
      }
    }
    return true;
  }

  std::size_t ElementSet::hash() const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (std::uint64_t w : words_) {
      h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

  Subgroup::Subgroup(std::size_t universe, std::vector<Element> elements)
      : elements_(std::move(elements)), mask_(universe) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    for (Element x : elements_) {
      mask_.set(x);
    }
  }

  Subgroup trivial_subgroup(FiniteGroup const& g) {
    return Subgroup(g.order(), {0});
  }

  Subgroup whole_group(FiniteGroup const& g) {
    std::vector<Element> all(g.order());
    std::iota(all.begin(), all.end(), 0);
    return Subgroup(g.order(), std::move(all));
  }

  // <S, x> as a union of right cosets S r.  Closing under right
  // multiplication by x and by every element of S touches each element of
  // the result a bounded number of times.
  Subgroup join(FiniteGroup const& g, Subgroup const& s, Element x) {
    if (s.contains(x)) {
      return s;
    }
    ElementSet           mask = s.mask();
    std::vector<Element> elements(s.elements());
    std::vector<Element> reps{0};
    auto                 add_coset = [&](Element r) {
      for (Element h : s.elements()) {
        Element y = g.mul(h, r);
        mask.set(y);
        elements.push_back(y);
      }
      reps.push_back(r);
    };
    for (std::size_t i = 0; i < reps.size(); ++i) {
      Element r = reps[i];
      Element y = g.mul(r, x);
      if (!mask.test(y)) {
        add_coset(y);
      }
      for (Element s_elt : s.elements()) {
        y = g.mul(r, s_elt);
        if (!mask.test(y)) {
          add_coset(y);
        }
      }
    }
    return Subgroup(g.order(), std::move(elements));
  }

  Subgroup generated_subgroup(FiniteGroup const& g, std::vector<Element> const& gens) {
    Subgroup s = trivial_subgroup(g);
    for (Element x : gens) {
      s = join(g, s, x);
    }
    return s;
  }

  bool is_subgroup(FiniteGroup const& g, std::vector<Element> const& elements) {
    if (elements.empty()) {
      return false;
    }
    Subgroup s(g.order(), elements);
    if (!s.contains(0)) {
      return false;
    }
    for (Element a : s.elements()) {
      if (!s.contains(g.inv(a))) {
        return false;
      }
      for (Element b : s.elements()) {
        if (!s.contains(g.mul(a, b))) {
          return false;
        }
      }
    }
    return true;
  }

  Subgroup conjugate(FiniteGroup const& g, Subgroup const& s, Element by) {
    std::vector<Element> image;
    image.reserve(s.size());
    for (Element x : s.elements()) {
      image.push_back(g.conj(by, x));
    }
    return Subgroup(g.order(), std::move(image));
  }

  bool is_normal(FiniteGroup const& g, Subgroup const& n, Subgroup const& in) {
    if (!n.subset_of(in)) {
      return false;
    }
    for (Element t : subgroup_generators(g, in)) {
      for (Element x : n.elements()) {
        if (!n.contains(g.conj(t, x))) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_normal(FiniteGroup const& g, Subgroup const& n) {
    for (Element t : g.generators()) {
      for (Element x : n.elements()) {
        if (!n.contains(g.conj(t, x))) {
          return false;
        }
      }
    }
    return true;
  }

  Subgroup normalizer(FiniteGroup const& g, Subgroup const& s) {
    std::vector<Element> result;
    for (Element t = 0; t < g.order(); ++t) {
      bool ok = true;
      for (Element x : s.elements()) {
        if (!s.contains(g.conj(t, x))) {
          ok = false;
          break;
        }
      }
      if (ok) {
        result.push_back(t);
      }
    }
    return Subgroup(g.order(), std::move(result));
  }

  Subgroup intersection(FiniteGroup const& g, Subgroup const& a, Subgroup const& b) {
    std::vector<Element> result;
    for (Element x : a.elements()) {
      if (b.contains(x)) {
        result.push_back(x);
      }
    }
    return Subgroup(g.order(), std::move(result));
  }

  Subgroup canonical_conjugate(FiniteGroup const& g, Subgroup const& s) {
    if (g.is_abelian()) {
      return s;
    }
    ElementSet best = s.mask();
    ElementSet image(g.order());
    for (Element t = 1; t < g.order(); ++t) {
      image = ElementSet(g.order());
      for (Element x : s.elements()) {
        image.set(g.conj(t, x));
      }
      if (lex_less_same_size(image, best)) {
        best = image;
      }
    }
    if (best == s.mask()) {
      return s;
    }
    std::vector<Element> elements;
    elements.reserve(s.size());
    for (Element x = 0; x < g.order(); ++x) {
      if (best.test(x)) {
        elements.push_back(x);
      }
    }
    return Subgroup(g.order(), std::move(elements));
  }

  Embedded subgroup_as_group(FiniteGroup const& g, Subgroup const& s, std::string name) {
    std::size_t const    n = s.size();
    std::vector<Element> local(g.order(), kUnset);
    for (std::size_t i = 0; i < n; ++i) {
      local[s.elements()[i]] = static_cast<Element>(i);
    }
    std::vector<Element> table(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Element p = local[g.mul(s.elements()[i], s.elements()[j])];
        if (p == kUnset) {
          throw PreconditionError("element set is not closed under multiplication");
        }
        table[i * n + j] = p;
      }
    }
    if (name.empty()) {
      name = "sub(" + g.name() + "," + std::to_string(n) + ")";
    }
    return {std::make_shared<FiniteGroup const>(std::move(name), n, std::move(table)),
            s.elements()};
  }

  Quotient quotient_group(FiniteGroup const& g, Subgroup const& n, std::string name) {
    if (!n.contains(0) || !is_normal(g, n)) {
      throw PreconditionError("quotient by a subgroup that is not normal");
    }
    std::vector<Element> proj(g.order(), kUnset);
    std::vector<Element> reps;
    for (Element x = 0; x < g.order(); ++x) {
      if (proj[x] != kUnset) {
        continue;
      }
      auto id = static_cast<Element>(reps.size());
      reps.push_back(x);
      for (Element m : n.elements()) {
        proj[g.mul(x, m)] = id;
      }
    }
    std::size_t const    q = reps.size();
    std::vector<Element> table(q * q);
    for (std::size_t i = 0; i < q; ++i) {
      for (std::size_t j = 0; j < q; ++j) {
        table[i * q + j] = proj[g.mul(reps[i], reps[j])];
      }
    }
    if (name.empty()) {
      name = g.name() + "/" + std::to_string(n.size());
    }
    return {std::make_shared<FiniteGroup const>(std::move(name), q, std::move(table)),
            std::move(proj)};
  }

  std::vector<Element>
  double_coset_reps(FiniteGroup const& g, Subgroup const& a, Subgroup const& b) {
    std::vector<Element> reps;
    ElementSet           seen(g.order());
    for (Element x = 0; x < g.order(); ++x) {
      if (seen.test(x)) {
        continue;
      }
      reps.push_back(x);
      for (Element u : a.elements()) {
        Element ux = g.mul(u, x);
        for (Element v : b.elements()) {
          seen.set(g.mul(ux, v));
        }
      }
    }
    return reps;
  }

  ////////////////////////////////////////////////////////////////////////
  // Isomorphisms
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // Backtracking over generator images.  At depth k the map is extended to
    // <gens[0..k]> by closing along every Cayley-graph edge, which is both a
    // homomorphism check and an injectivity check.
    class HomSearch {
     public:
      HomSearch(FiniteGroup const& g, FiniteGroup const& h) : g_(g), h_(h) {
        gens_ = g.generators();
        for (Element x : gens_) {
          std::vector<Element> cand;
          for (Element y = 0; y < h.order(); ++y) {
            if (h.element_order(y) == g.element_order(x)
                && h.centralizer_size(y) == g.centralizer_size(x)) {
              cand.push_back(y);
            }
          }
          candidates_.push_back(std::move(cand));
        }
        map_.assign(g.order(), kUnset);
        used_.assign(h.order(), false);
        map_[0]  = 0;
        used_[0] = true;
        domain_.push_back(0);
      }

      template <typename Visit>
      void run(Visit&& visit) {
        stop_ = false;
        search(0, visit);
      }

     private:
      template <typename Visit>
      void search(std::size_t depth, Visit& visit) {
        if (depth == gens_.size()) {
          if (domain_.size() == g_.order() && !visit(map_)) {
            stop_ = true;
          }
          return;
        }
        for (Element y : candidates_[depth]) {
          std::size_t const mark = domain_.size();
          if (extend(depth, y)) {
            search(depth + 1, visit);
          }
          for (std::size_t i = domain_.size(); i-- > mark;) {
            used_[map_[domain_[i]]] = false;
            map_[domain_[i]]        = kUnset;
          }
          domain_.resize(mark);
          if (stop_) {
            return;
          }
        }
      }

      bool assign(Element x, Element img) {
        if (map_[x] != kUnset) {
          return map_[x] == img;
        }
        if (used_[img]) {
          return false;
        }
        map_[x]    = img;
        used_[img] = true;
        domain_.push_back(x);
        return true;
      }

      bool extend(std::size_t depth, Element y) {
        Element const x = gens_[depth];
        if (map_[x] != kUnset) {
          return map_[x] == y;  // generator already in the span of earlier ones
        }
        if (!assign(x, y)) {
          return false;
        }
        for (std::size_t i = 0; i < domain_.size(); ++i) {
          Element z = domain_[i];
          for (std::size_t k = 0; k <= depth; ++k) {
            Element s = gens_[k];
            if (!assign(g_.mul(z, s), h_.mul(map_[z], map_[s]))) {
              return false;
            }
          }
        }
        return true;
      }

      FiniteGroup const&                g_;
      FiniteGroup const&                h_;
      std::vector<Element>              gens_;
      std::vector<std::vector<Element>> candidates_;
      std::vector<Element>              map_;
      std::vector<bool>                 used_;
      std::vector<Element>              domain_;
      bool                              stop_ = false;
    };
  }  // namespace

  std::optional<std::vector<Element>> is_isomorphic(FiniteGroup const& g, FiniteGroup const& h) {
    if (g.order() != h.order() || g.is_abelian() != h.is_abelian()
        || g.order_histogram() != h.order_histogram() || g.center().size() != h.center().size()) {
      return std::nullopt;
    }
    std::optional<std::vector<Element>> found;
    HomSearch(g, h).run([&found](std::vector<Element> const& m) {
      found = m;
      return false;
    });
    return found;
  }

  AutomorphismData automorphisms(FiniteGroup const& g) {
    if (g.order() > limits().max_automorphism_order) {
      throw BudgetExceeded("automorphism search above the configured order cap "
                               + std::to_string(limits().max_automorphism_order),
                           0);
    }
    AutomorphismData data;
    std::size_t const cap = limits().max_automorphisms;
    bool              over = false;
    HomSearch(g, g).run([&](std::vector<Element> const& m) {
      data.automorphisms.push_back(m);
      if (data.automorphisms.size() > cap) {
        over = true;
        return false;
      }
      return true;
    });
    if (over) {
      throw BudgetExceeded("automorphism count exceeds the configured cap", cap);
    }
    data.inner_count = g.order() / g.center().size();
    data.out_order   = data.automorphisms.size() / data.inner_count;
    return data;
  }

  bool is_isomorphism(FiniteGroup const& g, FiniteGroup const& h, std::vector<Element> const& map) {
    if (g.order() != h.order() || map.size() != g.order()) {
      return false;
    }
    std::vector<bool> hit(h.order(), false);
    for (Element x : map) {
      if (x >= h.order() || hit[x]) {
        return false;
      }
      hit[x] = true;
    }
    for (Element a = 0; a < g.order(); ++a) {
      for (Element b = 0; b < g.order(); ++b) {
        if (map[g.mul(a, b)] != h.mul(map[a], map[b])) {
          return false;
        }
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Predicates and arithmetic helpers
  ////////////////////////////////////////////////////////////////////////

  bool is_prime(std::uint64_t n) {
    if (n < 2) {
      return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        return false;
      }
    }
    return true;
  }

  std::vector<std::size_t> prime_divisors(std::size_t n) {
    std::vector<std::size_t> ps;
    for (std::size_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        ps.push_back(d);
        while (n % d == 0) {
          n /= d;
        }
      }
    }
    if (n > 1) {
      ps.push_back(n);
    }
    return ps;
  }

  std::size_t euler_phi(std::size_t n) {
    std::size_t result = n;
    for (std::size_t p : prime_divisors(n)) {
      result = result / p * (p - 1);
    }
    return result;
  }

  bool is_cyclic(FiniteGroup const& g) {
    for (Element a = 0; a < g.order(); ++a) {
      if (g.element_order(a) == g.order()) {
        return true;
      }
    }
    return false;
  }

  bool is_p_group(FiniteGroup const& g, std::size_t* prime) {
    auto ps = prime_divisors(g.order());
    if (ps.size() != 1) {
      return false;
    }
    if (prime != nullptr) {
      *prime = ps[0];
    }
    return true;
  }

  std::vector<Element> p_elements(FiniteGroup const& g, std::size_t p) {
    std::vector<Element> result;
    for (Element a = 0; a < g.order(); ++a) {
      std::size_t o = g.element_order(a);
      while (o % p == 0) {
        o /= p;
      }
      if (o == 1) {
        result.push_back(a);
      }
    }
    return result;
  }

  bool is_nilpotent(FiniteGroup const& g) {
    for (std::size_t p : prime_divisors(g.order())) {
      std::size_t part = 1, n = g.order();
      while (n % p == 0) {
        n /= p;
        part *= p;
      }
      if (p_elements(g, p).size() != part) {
        return false;
      }
    }
    return true;
  }

}  // namespace biset
