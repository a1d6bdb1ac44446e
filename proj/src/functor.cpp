#include "biset/functor.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "biset/catalog.hpp"
#include "biset/lattice.hpp"
#include "biset/span.hpp"

namespace biset {

  namespace {

    // Large prime for the characteristic-0 prefilter.
    constexpr std::uint64_t kPrefilterPrime = (std::uint64_t{1} << 61) - 1;

    using PairList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

    GroupPtr trivial_group() {
      static GroupPtr const one = cyclic_group(1);
      return one;
    }

    // |U| * |W| ascending, ties by (i, j).
    PairList pair_order(BisetSpace const& hg, BisetSpace const& gh) {
      PairList pairs;
      pairs.reserve(hg.size() * gh.size());
      for (std::uint32_t i = 0; i < hg.size(); ++i) {
        for (std::uint32_t j = 0; j < gh.size(); ++j) {
          pairs.emplace_back(i, j);
        }
      }
      auto weight = [&](auto const& p) {
        return static_cast<std::uint64_t>(hg.sizes(p.first)[0]) * gh.sizes(p.second)[0];
      };
      std::stable_sort(pairs.begin(), pairs.end(),
                       [&](auto const& a, auto const& b) { return weight(a) < weight(b); });
      return pairs;
    }

    // Composes the listed pairs in batches on worker threads and hands the
    // results to `consume` in list order.  Stops when consume returns false.
    template <typename Consume>
    void stream_products(SpacePtr const& hg, SpacePtr const& gh, SpacePtr const& hh,
                         PairList const& pairs, SearchOptions const& opt, Consume&& consume) {
      unsigned const        workers = std::max(1U, opt.threads);
      std::size_t const     batch   = std::max<std::size_t>(opt.batch, 1);
      std::vector<Composer> composers;
      for (unsigned t = 0; t < workers; ++t) {
        composers.emplace_back(hg, gh, hh);
      }
      std::vector<LabelCounts> buf;
      for (std::size_t start = 0; start < pairs.size(); start += batch) {
        if (opt.budget.expired()) {
          throw BudgetExceeded("search budget exhausted", start);
        }
        std::size_t const end = std::min(pairs.size(), start + batch);
        buf.assign(end - start, {});
        auto work = [&](unsigned t) {
          for (std::size_t i = start + t; i < end; i += workers) {
            buf[i - start] = composers[t].compose(pairs[i].first, pairs[i].second);
          }
        };
        if (workers == 1 || end - start < 2 * workers) {
          for (std::size_t i = start; i < end; ++i) {
            buf[i - start] = composers[0].compose(pairs[i].first, pairs[i].second);
          }
        } else {
          std::vector<std::jthread> pool;
          for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back(work, t);
          }
        }
        for (std::size_t i = start; i < end; ++i) {
          if (!consume(i, buf[i - start])) {
            return;
          }
        }
      }
    }

    SparseVector<std::uint64_t> modular_vector(LabelCounts const& c, std::uint64_t p) {
      SparseVector<std::uint64_t> v;
      v.reserve(c.size());
      for (auto const& [l, n] : c) {
        if (n % p != 0) {
          v.emplace_back(l, n % p);
        }
      }
      return v;
    }

    SparseVector<mpz_class> integer_vector(LabelCounts const& c) {
      SparseVector<mpz_class> v;
      v.reserve(c.size());
      for (auto const& [l, n] : c) {
        v.emplace_back(l, mpz_class(static_cast<unsigned long>(n)));
      }
      return v;
    }

    // Canonical conjugates are cached per product group.
    class Canonicalizer {
     public:
      explicit Canonicalizer(GroupPtr product) : product_(std::move(product)) {}
      Subgroup const& operator()(Subgroup const& s) {
        auto it = cache_.find(s.mask());
        if (it == cache_.end()) {
          it = cache_.emplace(s.mask(), canonical_conjugate(*product_, s)).first;
        }
        return it->second;
      }

     private:
      GroupPtr                                                 product_;
      std::unordered_map<ElementSet, Subgroup, ElementSetHash> cache_;
    };

    GeneratesCertificate make_certificate(GroupPtr const& h, GroupPtr const& g, FieldSpec field,
                                          std::map<std::pair<Subgroup, Subgroup>, Scalar> terms) {
      GeneratesCertificate cert{h, g, field, {}};
      for (auto& [key, c] : terms) {
        if (!c.is_zero()) {
          cert.terms.push_back({key.first, key.second, c});
        }
      }
      return cert;
    }

    // Def^G_{G/N} Inf_{G/N}^G with G/N identified with H.
    GeneratesCertificate quotient_certificate(GroupPtr const& h, GroupPtr const& g,
                                              QuotientWitness const& qw, FieldSpec field) {
      std::size_t const    nh = h->order(), ng = g->order();
      std::vector<Element> back(qw.quotient.group->order());
      for (Element x = 0; x < nh; ++x) {
        back[qw.iso[x]] = x;
      }
      std::vector<Element> u, w;
      for (Element x = 0; x < ng; ++x) {
        Element const y = back[qw.quotient.projection[x]];
        u.push_back(static_cast<Element>(y * ng + x));
        w.push_back(static_cast<Element>(x * nh + y));
      }
      auto hg = direct_product(h, g);
      auto gh = direct_product(g, h);
      std::map<std::pair<Subgroup, Subgroup>, Scalar> terms;
      terms.emplace(std::pair(canonical_conjugate(*hg, Subgroup(nh * ng, u)),
                              canonical_conjugate(*gh, Subgroup(nh * ng, w))),
                    Scalar(field, 1));
      return make_certificate(h, g, field, std::move(terms));
    }


    // Partitions of r into parts < bound.
    void partitions(std::size_t r, std::size_t max_part, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
      if (r == 0) {
        out.push_back(cur);
        return;
      }
      for (std::size_t part = std::min(r, max_part); part >= 1; --part) {
        cur.push_back(part);
        partitions(r - part, part, cur, out);
        cur.pop_back();
      }
    }

    std::size_t ipow(std::size_t b, std::size_t e) {
      std::size_t r = 1;
      while (e-- > 0) {
        r *= b;
      }
      return r;
    }

    std::size_t rank_over(IntMatrix const& m, FieldSpec field) {
      return field.is_rational() ? rank_rational(m) : rank_mod_p(m, field.characteristic());
    }

  }  // namespace

  std::string to_string(Verdict v) {
    switch (v) {
      case Verdict::True:
        return "true";
      case Verdict::False:
        return "false";
      case Verdict::Inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
  }

  // Certificates

  std::vector<Subgroup> subgroup_mackey(FiniteGroup const& h, FiniteGroup const& g,
                                        FiniteGroup const& k, Subgroup const& u,
                                        Subgroup const& w) {
    std::size_t const ng = g.order(), nk = k.order();
    std::vector<Element>              p2u, p1w;
    std::vector<std::vector<Element>> right_of(ng);
    for (Element e : u.elements()) {
      p2u.push_back(e % ng);
    }
    for (Element e : w.elements()) {
      p1w.push_back(e / nk);
      right_of[e / nk].push_back(e % nk);
    }
    std::sort(p2u.begin(), p2u.end());
    p2u.erase(std::unique(p2u.begin(), p2u.end()), p2u.end());
    std::sort(p1w.begin(), p1w.end());
    p1w.erase(std::unique(p1w.begin(), p1w.end()), p1w.end());
    Subgroup const a(ng, p2u), b(ng, p1w);

    std::vector<Subgroup> out;
    for (Element t : double_coset_reps(g, a, b)) {
      Element const        ti = g.inv(t);
      std::vector<Element> elems;
      for (Element e : u.elements()) {
        Element const x  = e / ng;
        Element const gg = g.mul(g.mul(ti, e % ng), t);
        for (Element y : right_of[gg]) {
          elems.push_back(static_cast<Element>(x * nk + y));
        }
      }
      std::sort(elems.begin(), elems.end());
      elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
      out.emplace_back(h.order() * nk, std::move(elems));
    }
    return out;
  }

  CanonicalSum recompose(GeneratesCertificate const& cert) {
    FiniteGroup const& h = *cert.h;
    Canonicalizer      canon(direct_product(cert.h, cert.h));
    CanonicalSum       sum;
    for (auto const& term : cert.terms) {
      for (Subgroup const& s : subgroup_mackey(h, *cert.g, h, term.u, term.w)) {
        Subgroup const& c  = canon(s);
        auto [it, fresh]   = sum.try_emplace(c.elements(), Scalar(cert.field, 0));
        it->second        += term.coeff;
        if (it->second.is_zero()) {
          sum.erase(it);
        }
      }
    }
    return sum;
  }

  bool verify_certificate(GeneratesCertificate const& cert) {
    FiniteGroup const&   h  = *cert.h;
    std::size_t const    nh = h.order();
    std::vector<Element> diag;
    for (Element x = 0; x < nh; ++x) {
      diag.push_back(static_cast<Element>(x * nh + x));
    }
    Subgroup const id = canonical_conjugate(*direct_product(cert.h, cert.h), Subgroup(nh * nh, diag));
    CanonicalSum   sum = recompose(cert);
    return sum.size() == 1 && sum.begin()->first == id.elements()
           && sum.begin()->second == Scalar(cert.field, 1);
  }

  GeneratesCertificate chain_certificates(GeneratesCertificate const& kh,
                                          GeneratesCertificate const& hg) {
    if (!(kh.field == hg.field) || !same_group(*kh.g, *hg.h)) {
      throw PreconditionError("certificates do not chain");
    }
    FiniteGroup const& k = *kh.h;
    FiniteGroup const& h = *kh.g;
    FiniteGroup const& g = *hg.g;
    Canonicalizer      canon_kg(direct_product(kh.h, hg.g));
    Canonicalizer      canon_gk(direct_product(hg.g, kh.h));
    std::map<std::pair<Subgroup, Subgroup>, Scalar> terms;
    for (auto const& a : kh.terms) {
      for (auto const& b : hg.terms) {
        auto const x = subgroup_mackey(k, h, g, a.u, b.u);
        auto const y = subgroup_mackey(g, h, k, b.w, a.w);
        Scalar const c = a.coeff * b.coeff;
        for (Subgroup const& sx : x) {
          for (Subgroup const& sy : y) {
            auto [it, fresh] = terms.try_emplace({canon_kg(sx), canon_gk(sy)}, Scalar(kh.field, 0));
            it->second += c;
          }
        }
      }
    }
    return make_certificate(kh.h, hg.g, kh.field, std::move(terms));
  }

  // Generating relation

  GeneratesReport generates_by_span(GroupPtr const& h, GroupPtr const& g, FieldSpec field,
                                    SearchOptions const& opt) {
    GeneratesReport rep;
    rep.h      = h;
    rep.g      = g;
    rep.field  = field;
    rep.method = "span";
    try {
      SpacePtr hg = biset_space(h, g, opt.budget);
      SpacePtr gh = biset_space(g, h, opt.budget);
      SpacePtr hh = biset_space(h, h, opt.budget);
      rep.dimension      = hh->size();
      rep.products_total = static_cast<std::uint64_t>(hg->size()) * gh->size();
      PairList const      pairs  = pair_order(*hg, *gh);
      std::uint32_t const target = static_cast<std::uint32_t>(hh->identity_index());

      using ModCert = ModularSpan::Certificate;
      using QCert   = RationalSpan::Certificate;
      std::optional<ModCert> mod_cert;
      std::optional<QCert>   q_cert;
      bool                   found = false;

      if (!field.is_rational()) {
        std::uint64_t const p = field.characteristic();
        ModularSpan         span(hh->size(), PrimeField{p});
        SparseVector<std::uint64_t> const t{{target, 1}};
        stream_products(hg, gh, hh, pairs, opt, [&](std::size_t idx, LabelCounts const& c) {
          ++rep.products_tried;
          if (span.add(modular_vector(c, p), idx) && span.contains(t)) {
            found = true;
            return false;
          }
          return true;
        });
        rep.rank_reached = span.rank();
        if (found && opt.certificate) {
          mod_cert = span.certificate(t);
        }
      } else {
        // Vectors independent mod a large prime go to the exact span; the
        // rest are re-examined over Q before a negative answer is given.
        ModularSpan                       mod(hh->size(), PrimeField{kPrefilterPrime});
        RationalSpan                      q(hh->size());
        SparseVector<std::uint64_t> const tm{{target, 1}};
        SparseVector<mpz_class> const     tq{{target, mpz_class(1)}};
        std::vector<std::size_t>          deferred;
        bool                              mod_hit = false;
        stream_products(hg, gh, hh, pairs, opt, [&](std::size_t idx, LabelCounts const& c) {
          ++rep.products_tried;
          if (!mod.add(modular_vector(c, kPrefilterPrime), idx)) {
            deferred.push_back(idx);
            return true;
          }
          q.add(integer_vector(c), idx);
          mod_hit = mod_hit || mod.contains(tm);
          if (mod_hit && q.contains(tq)) {
            found = true;
            return false;
          }
          return true;
        });
        while (!found) {
          if (q.contains(tq)) {
            found = true;
            break;
          }
          // f vanishes on the span and f(target) != 0; the target is outside
          // the full span iff f also vanishes on every deferred product.
          auto const r = q.residual(tq);
          auto const f = q.annihilator(r.front().first);
          std::vector<mpq_class> dense(hh->size(), mpq_class(0));
          for (auto const& [c, x] : f) {
            dense[c] = x;
          }
          PairList sub;
          sub.reserve(deferred.size());
          for (std::size_t idx : deferred) {
            sub.push_back(pairs[idx]);
          }
          std::optional<std::size_t> witness;
          LabelCounts                witness_counts;
          stream_products(hg, gh, hh, sub, opt, [&](std::size_t k, LabelCounts const& c) {
            mpq_class s = 0;
            for (auto const& [l, n] : c) {
              if (sgn(dense[l]) != 0) {
                s += dense[l] * mpq_class(static_cast<unsigned long>(n));
              }
            }
            if (sgn(s) != 0) {
              witness        = k;
              witness_counts = c;
              return false;
            }
            return true;
          });
          if (!witness) {
            break;
          }
          q.add(integer_vector(witness_counts), deferred[*witness]);
          deferred.erase(deferred.begin() + static_cast<std::ptrdiff_t>(*witness));
        }
        rep.rank_reached = q.rank();
        if (found && opt.certificate) {
          q_cert = q.certificate(tq);
        }
      }

      rep.result = found ? Verdict::True : Verdict::False;
      if (found && opt.certificate) {
        std::map<std::pair<Subgroup, Subgroup>, Scalar> terms;
        auto add_term = [&](std::size_t idx, Scalar const& c) {
          auto const [i, j] = pairs[idx];
          terms.emplace(std::pair(hg->label(i), gh->label(j)), c);
        };
        if (mod_cert) {
          for (auto const& [idx, c] : *mod_cert) {
            add_term(idx, Scalar(field, static_cast<long long>(c)));
          }
        } else {
          for (auto const& [idx, c] : *q_cert) {
            add_term(idx, Scalar(field, c));
          }
        }
        rep.certificate = make_certificate(h, g, field, std::move(terms));
      }
    } catch (BudgetExceeded const& e) {
      rep.result = Verdict::Inconclusive;
      rep.note   = e.what();
    }
    return rep;
  }

  GeneratesReport generates(GroupPtr const& h, GroupPtr const& g, FieldSpec field,
                            SearchOptions const& opt) {
    GeneratesReport rep;
    rep.h     = h;
    rep.g     = g;
    rep.field = field;
    try {
      if (g->order() % h->order() != 0 || !is_subquotient(h, g)) {
        rep.result = Verdict::False;
        rep.method = "not-subquotient";
        return rep;
      }
      if (auto qw = find_quotient_isomorphic_to(g, *h)) {
        rep.result = Verdict::True;
        rep.method = "quotient";
        if (opt.certificate) {
          rep.certificate = quotient_certificate(h, g, *qw, field);
        }
        return rep;
      }
    } catch (BudgetExceeded const& e) {
      rep.result = Verdict::Inconclusive;
      rep.method = "quotient";
      rep.note   = e.what();
      return rep;
    }
    return generates_by_span(h, g, field, opt);
  }

  NvReport is_nv(GroupPtr const& g, FieldSpec field, SearchOptions const& opt) {
    NvReport rep;
    rep.g     = g;
    rep.field = field;
    auto subs = subquotients_up_to_iso(g);
    std::stable_sort(subs.begin(), subs.end(), [](auto const& a, auto const& b) {
      return a.group->order() > b.group->order();
    });
    bool any_false = false, any_open = false;
    for (auto const& sq : subs) {
      NvEntry e;
      e.witness = sq.witness;
      e.h       = sq.group;
      // Prefer a catalog construction so that reports carry parseable names.
      try {
        GroupPtr named = build_group(describe_group(*sq.group));
        if (is_isomorphic(*named, *sq.group)) {
          e.h = named;
        }
      } catch (std::exception const&) {
      }
      e.report.h     = e.h;
      e.report.g     = g;
      e.report.field = field;

      if (auto qw = find_quotient_isomorphic_to(g, *e.h)) {
        e.report.result = Verdict::True;
        e.report.method = "quotient";
        if (opt.certificate) {
          e.report.certificate = quotient_certificate(e.h, g, *qw, field);
        }
      } else {
        for (NvEntry const& b : rep.entries) {
          if (b.report.result != Verdict::True || b.h->order() % e.h->order() != 0) {
            continue;
          }
          auto qw2 = find_quotient_isomorphic_to(b.h, *e.h);
          if (!qw2) {
            continue;
          }
          e.report.result = Verdict::True;
          e.report.method = "transitive";
          e.via           = b.h->name();
          if (opt.certificate && b.report.certificate) {
            e.report.certificate = chain_certificates(
                quotient_certificate(e.h, b.h, *qw2, field), *b.report.certificate);
          }
          break;
        }
        if (e.report.method.empty()) {
          e.report = generates_by_span(e.h, g, field, opt);
        }
      }
      any_false = any_false || e.report.result == Verdict::False;
      any_open  = any_open || e.report.result == Verdict::Inconclusive;
      rep.entries.push_back(std::move(e));
    }
    rep.overall = any_false ? Verdict::False : any_open ? Verdict::Inconclusive : Verdict::True;
    return rep;
  }

  // Simple functor dimensions

  bool is_p_group_times_cyclic(FiniteGroup const& t, std::size_t p) {
    if (!is_nilpotent(t)) {
      return false;
    }
    for (std::size_t q : prime_divisors(t.order())) {
      if (q == p) {
        continue;
      }
      std::size_t part = 1;
      for (std::size_t n = t.order(); n % q == 0; n /= q) {
        part *= q;
      }
      bool cyclic = false;
      for (Element x = 0; x < t.order() && !cyclic; ++x) {
        cyclic = t.element_order(x) == part;
      }
      if (!cyclic) {
        return false;
      }
    }
    return true;
  }

  SimpleDimReport simple_dim_p_group(GroupPtr const& p_group, GroupPtr const& g) {
    std::size_t p = 0;
    if (!is_p_group(*p_group, &p) || p_group->order() == 1) {
      throw PreconditionError("simple_dim_p_group needs a non-trivial p-group");
    }
    if (p_group->order() == p * p && !is_cyclic(*p_group)) {
      throw PreconditionError("the section count does not apply to P = C_p x C_p");
    }
    SimpleDimReport rep;
    for (SectionClass const& sc : section_classes(g)) {
      Section const& s = sc.representative;
      if (s.top.size() != s.bottom.size() * p_group->order()) {
        continue;
      }
      if (!is_isomorphic(*section_quotient(*g, s), *p_group)) {
        continue;
      }
      ++rep.raw;
      auto const t = subgroup_as_group(*g, s.top);
      if (is_p_group_times_cyclic(*t.group, p)) {
        rep.counted.push_back(sc);
      } else {
        rep.excluded.push_back(sc);
      }
    }
    rep.dimension = rep.counted.size();
    return rep;
  }

  // s-self-duality

  bool classified_s_self_dual_p_group(GroupPtr const& pg) {
    std::size_t p = 0;
    if (!is_p_group(*pg, &p)) {
      throw PreconditionError("classification predicate needs a p-group");
    }
    if (pg->is_abelian()) {
      return true;
    }
    std::size_t m = 0;
    for (std::size_t n = pg->order(); n > 1; n /= p) {
      ++m;
    }
    // X(p^3) x C_p^k
    if (p != 2 && m >= 3 && pg->exponent() == p) {
      GroupPtr x = build_group("X(" + std::to_string(p * p * p) + ")");
      if (m > 3) {
        x = direct_product(x, abelian_group(std::vector<std::size_t>(m - 3, p)));
      }
      if (is_isomorphic(*x, *pg)) {
        return true;
      }
    }
    // M_p(n,n) x M with exp(M) < p^n
    for (std::size_t n = 2; 2 * n <= m; ++n) {
      GroupPtr const base = build_group("M(" + std::to_string(p) + "," + std::to_string(n) + ")");
      std::vector<std::vector<std::size_t>> parts;
      std::vector<std::size_t>              cur;
      partitions(m - 2 * n, n - 1, cur, parts);
      for (auto const& part : parts) {
        GroupPtr cand = base;
        if (!part.empty()) {
          std::vector<std::size_t> orders;
          for (std::size_t e : part) {
            orders.push_back(ipow(p, e));
          }
          cand = direct_product(base, abelian_group(orders));
        }
        if (is_isomorphic(*cand, *pg)) {
          return true;
        }
      }
    }
    return false;
  }

  SelfDualReport is_s_self_dual(GroupPtr const& g) {
    SelfDualReport rep;
    rep.direct        = true;
    LatticePtr const lat = subgroup_lattice(g);
    for (SubgroupClass const& cls : lat->classes) {
      auto const s = subgroup_as_group(*g, lat->subgroups[cls.representative()]);
      if (!find_quotient_isomorphic_to(g, *s.group)) {
        rep.direct  = false;
        rep.witness = describe_group(*s.group);
        break;
      }
    }
    if (is_nilpotent(*g)) {
      bool ok = true;
      for (std::size_t p : prime_divisors(g->order())) {
        auto const sylow = subgroup_as_group(*g, Subgroup(g->order(), p_elements(*g, p)));
        ok               = ok && classified_s_self_dual_p_group(sylow.group);
      }
      rep.classification = ok;
    } else {
      rep.classification = std::nullopt;
    }
    return rep;
  }

  // Semisimplicity and trace forms

  bool is_semisimple(FiniteGroup const& g, FieldSpec field) {
    std::uint64_t const c = field.characteristic();
    return is_cyclic(g) && (c == 0 || euler_phi(g.order()) % c != 0);
  }

  IntMatrix trace_gram_matrix(GroupPtr const& g) {
    SpacePtr const    gg = biset_space(g, g);
    std::size_t const n  = gg->size();
    std::vector<long long> tr(n);
    for (std::size_t l = 0; l < n; ++l) {
      tr[l] = static_cast<long long>(label_trace(*gg, l));
    }
    Composer  comp(gg, gg, gg);
    IntMatrix m(n, std::vector<long long>(n, 0));
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        long long s = 0;
        for (auto const& [l, k] : comp.compose(u, v)) {
          s += static_cast<long long>(k) * tr[l];
        }
        m[u][v] = s;
      }
    }
    return m;
  }

  GramRank trace_gram_rank(GroupPtr const& g, FieldSpec field) {
    IntMatrix const m = trace_gram_matrix(g);
    return {rank_over(m, field), m.size()};
  }

  std::size_t radical_dim_char0(GroupPtr const& g, Budget const& budget) {
    SpacePtr const    gg = biset_space(g, g, budget);
    std::size_t const n  = gg->size();
    Composer          comp(gg, gg, gg);
    // t(l) = trace of left multiplication by l in the canonical basis
    std::vector<long long> t(n, 0);
    for (std::size_t l = 0; l < n; ++l) {
      if (budget.expired()) {
        throw BudgetExceeded("radical computation budget exhausted", l);
      }
      for (std::size_t w = 0; w < n; ++w) {
        for (auto const& [x, k] : comp.compose(l, w)) {
          if (x == w) {
            t[l] += static_cast<long long>(k);
          }
        }
      }
    }
    IntMatrix m(n, std::vector<long long>(n, 0));
    for (std::size_t u = 0; u < n; ++u) {
      if (budget.expired()) {
        throw BudgetExceeded("radical computation budget exhausted", n + u);
      }
      for (std::size_t v = u; v < n; ++v) {
        long long s = 0;
        for (auto const& [l, k] : comp.compose(u, v)) {
          s += static_cast<long long>(k) * t[l];
        }
        m[u][v] = s;
      }
    }
    // tr(L_{uv}) = tr(L_u L_v) = tr(L_v L_u): the form is symmetric
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < u; ++v) {
        m[u][v] = m[v][u];
      }
    }
    return n - rank_rational(m);
  }

  // Burnside module

  namespace {
    ModuleActionSet empty_action_set(GroupPtr const& g, FieldSpec field, std::size_t count,
                                     std::size_t dim) {
      ModuleActionSet set{g, field, {}};
      set.matrices.assign(count, Matrix(field, dim, dim));
      return set;
    }
  }  // namespace

  ModuleActionSet burnside_module_matrices(GroupPtr const& g, FieldSpec field) {
    SpacePtr const gg = biset_space(g, g);
    SpacePtr const g1 = biset_space(g, trivial_group());
    auto           set = empty_action_set(g, field, gg->size(), g1->size());
    Composer       comp(gg, g1, g1);
    for (std::size_t x = 0; x < gg->size(); ++x) {
      for (std::size_t b = 0; b < g1->size(); ++b) {
        for (auto const& [l, k] : comp.compose(x, b)) {
          set.matrices[x].at(l, b) = Scalar(field, static_cast<long long>(k));
        }
      }
    }
    return set;
  }

  ModuleActionSet burnside_module_matrices_abelian(GroupPtr const& g, FieldSpec field) {
    if (!g->is_abelian()) {
      throw PreconditionError("the closed-form action needs an abelian group");
    }
    FiniteGroup const& grp = *g;
    std::size_t const  n   = grp.order();
    SpacePtr const     gg  = biset_space(g, g);
    SpacePtr const     g1  = biset_space(g, trivial_group());
    auto               set = empty_action_set(g, field, gg->size(), g1->size());
    for (std::size_t x = 0; x < gg->size(); ++x) {
      Subgroup const& lx = gg->label(x);
      std::vector<Element> p2;
      for (Element e : lx.elements()) {
        p2.push_back(static_cast<Element>(e % n));
      }
      for (std::size_t b = 0; b < g1->size(); ++b) {
        Subgroup const& l = g1->label(b);  // (s, 1) encodes as s
        std::vector<Element> prod, dot;
        for (Element a : p2) {
          for (Element s : l.elements()) {
            prod.push_back(grp.mul(a, s));
          }
        }
        for (Element e : lx.elements()) {
          if (l.contains(static_cast<Element>(e % n))) {
            dot.push_back(static_cast<Element>(e / n));
          }
        }
        std::sort(prod.begin(), prod.end());
        prod.erase(std::unique(prod.begin(), prod.end()), prod.end());
        std::sort(dot.begin(), dot.end());
        dot.erase(std::unique(dot.begin(), dot.end()), dot.end());
        std::size_t const target = g1->index_of(Subgroup(n, dot));
        set.matrices[x].at(target, b) =
            Scalar(field, static_cast<long long>(n / prod.size()));
      }
    }
    return set;
  }

  SubmoduleReport check_submodules(GroupPtr const& g, FieldSpec field) {
    std::size_t p = 0;
    if (!is_cyclic(*g) || !is_p_group(*g, &p) || g->order() == 1) {
      throw PreconditionError("check_submodules needs a non-trivial cyclic p-group");
    }
    auto const        set  = burnside_module_matrices(g, field);
    SpacePtr const    g1   = biset_space(g, trivial_group());
    std::size_t const d    = g1->size();
    std::size_t const full = d - 1;  // label of G/G is last in lattice order

    // V = {x : A x = 0} is invariant under M iff every row of A M lies in rowspace(A).
    auto invariant = [&](Matrix const& a) {
      std::size_t const r0 = rank(a);
      for (Matrix const& m : set.matrices) {
        Matrix const am = a * m;
        Matrix       stacked(field, a.rows() * 2, d);
        for (std::size_t i = 0; i < a.rows(); ++i) {
          for (std::size_t j = 0; j < d; ++j) {
            stacked.at(i, j)            = a.at(i, j);
            stacked.at(a.rows() + i, j) = am.at(i, j);
          }
        }
        if (rank(stacked) != r0) {
          return false;
        }
      }
      return true;
    };

    Matrix n_eq(field, 1, d);
    for (std::size_t j = 0; j < d; ++j) {
      n_eq.at(0, j) = Scalar(field, 1);
    }
    Matrix np_eq(field, 2, d);
    for (std::size_t j = 0; j < d; ++j) {
      np_eq.at(0, j) = Scalar(field, 1);
    }
    np_eq.at(1, full) = Scalar(field, 1);

    SubmoduleReport rep;
    rep.n_dim             = d - rank(n_eq);
    rep.n_invariant       = invariant(n_eq);
    rep.n_prime_dim       = d - rank(np_eq);
    rep.n_prime_invariant = invariant(np_eq);
    return rep;
  }

  // Essential quotient

  std::size_t essential_quotient_dim(GroupPtr const& h, FieldSpec) {
    FiniteGroup const& grp  = *h;
    std::size_t const  n    = grp.order();
    auto const         auts = automorphisms(grp).automorphisms;
    // graph(alpha) is conjugate in H x H to graph(c_a alpha c_b^-1); count the
    // orbits of that action on Aut(H).
    std::map<std::vector<Element>, std::size_t> index;
    for (std::size_t i = 0; i < auts.size(); ++i) {
      index.emplace(auts[i], i);
    }
    std::vector<std::size_t> parent(auts.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      while (parent[x] != x) {
        x = parent[x] = parent[parent[x]];
      }
      return x;
    };
    std::vector<Element> img(n);
    for (std::size_t i = 0; i < auts.size(); ++i) {
      for (Element a : grp.generators()) {
        // c_a o alpha and alpha o c_a generate the action
        for (int side = 0; side < 2; ++side) {
          for (Element x = 0; x < n; ++x) {
            img[x] = side == 0 ? grp.conj(a, auts[i][x]) : auts[i][grp.conj(a, x)];
          }
          std::size_t const j = index.at(img);
          parent[find(i)]     = find(j);
        }
      }
    }
    std::size_t orbits = 0;
    for (std::size_t i = 0; i < auts.size(); ++i) {
      orbits += find(i) == i ? 1 : 0;
    }
    return orbits;
  }

  std::size_t essential_quotient_dim_from_basis(GroupPtr const& h) {
    SpacePtr const hh    = biset_space(h, h);
    std::size_t    count = 0;
    for (std::size_t i = 0; i < hh->size(); ++i) {
      count += hh->sizes(i)[5] == h->order() ? 1 : 0;
    }
    return count;
  }

}  // namespace biset
