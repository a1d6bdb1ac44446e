#include "biset/lattice.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "biset/cache.hpp"

namespace biset {

  namespace {
    std::string& cache_dir_storage() {
      static std::string dir;
      return dir;
    }

    bool prime_power(std::size_t n) {
      return n > 1 && prime_divisors(n).size() == 1;
    }

    std::vector<Element> generators_of(FiniteGroup const& g, Subgroup const& s) {
      std::vector<Element> gens;
      Subgroup             cur = trivial_subgroup(g);
      for (Element e : s.elements()) {
        if (cur.size() == s.size()) {
          break;
        }
        if (!cur.contains(e)) {
          cur = join(g, cur, e);
          gens.push_back(e);
        }
      }
      return gens;
    }

    // Orbit of lattice entry `start` under conjugation by `gens`.
    std::vector<std::size_t> conjugation_orbit(SubgroupLattice const&     lat,
                                               std::size_t                start,
                                               std::vector<Element> const& gens) {
      FiniteGroup const&       g = *lat.group;
      std::vector<std::size_t> orbit{start};
      std::vector<bool>        seen(lat.subgroups.size(), false);
      seen[start] = true;
      for (std::size_t i = 0; i < orbit.size(); ++i) {
        for (Element t : gens) {
          auto j = lat.find(conjugate(g, lat.subgroups[orbit[i]], t));
          if (!j) {
            throw std::logic_error("subgroup lattice is not closed under conjugation");
          }
          if (!seen[*j]) {
            seen[*j] = true;
            orbit.push_back(*j);
          }
        }
      }
      std::sort(orbit.begin(), orbit.end());
      return orbit;
    }
  }  // namespace

  void set_cache_directory(std::string dir) {
    cache_dir_storage() = std::move(dir);
  }

  std::string const& cache_directory() {
    return cache_dir_storage();
  }

  std::optional<std::size_t> SubgroupLattice::find(Subgroup const& s) const {
    auto it = index.find(s.mask());
    if (it == index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  void SubgroupLattice::reindex() {
    index.clear();
    index.reserve(subgroups.size());
    for (std::size_t i = 0; i < subgroups.size(); ++i) {
      index.emplace(subgroups[i].mask(), i);
    }
    class_of.assign(subgroups.size(), 0);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      for (std::size_t m : classes[c].members) {
        class_of[m] = c;
      }
    }
  }

  SubgroupLattice compute_subgroup_lattice(GroupPtr const& gp, Budget const& budget) {
    FiniteGroup const& g = *gp;
    std::size_t const  cap = limits().max_subgroups;

    std::vector<Subgroup>                                       found;
    std::unordered_map<ElementSet, std::size_t, ElementSetHash> seen;
    auto add = [&](Subgroup s) -> bool {
      if (seen.contains(s.mask())) {
        return false;
      }
      seen.emplace(s.mask(), found.size());
      found.push_back(std::move(s));
      if (found.size() > cap) {
        throw BudgetExceeded("subgroup enumeration exceeded the configured cap", found.size());
      }
      return true;
    };

    add(trivial_subgroup(g));
    // every subgroup is generated by cyclic subgroups of prime-power order
    std::vector<Element>  extenders;
    std::vector<Subgroup> frontier;
    for (Element x = 1; x < g.order(); ++x) {
      Subgroup z = generated_subgroup(g, {x});
      if (add(z)) {
        frontier.push_back(z);
        if (prime_power(g.element_order(x))) {
          extenders.push_back(x);
        }
      }
    }
    std::size_t steps = 0;
    while (!frontier.empty()) {
      std::vector<Subgroup> next;
      for (Subgroup const& s : frontier) {
        for (Element x : extenders) {
          if (s.contains(x)) {
            continue;
          }
          if ((++steps & 0x3FF) == 0 && budget.expired()) {
            throw BudgetExceeded("subgroup enumeration ran out of time", found.size());
          }
          Subgroup j = join(g, s, x);
          if (add(j)) {
            next.push_back(std::move(j));
          }
        }
      }
      frontier = std::move(next);
    }

    SubgroupLattice lat;
    lat.group     = gp;
    lat.subgroups = std::move(found);
    std::sort(lat.subgroups.begin(), lat.subgroups.end(), SizeThenLex{});
    lat.reindex();

    std::vector<bool> done(lat.subgroups.size(), false);
    for (std::size_t i = 0; i < lat.subgroups.size(); ++i) {
      if (done[i]) {
        continue;
      }
      SubgroupClass cls;
      if (g.is_abelian()) {
        cls.members = {i};
      } else {
        cls.members = conjugation_orbit(lat, i, g.generators());
      }
      for (std::size_t m : cls.members) {
        done[m] = true;
      }
      lat.classes.push_back(std::move(cls));
    }
    lat.reindex();
    return lat;
  }

  LatticePtr subgroup_lattice(GroupPtr const& g, Budget const& budget) {
    static std::mutex                                   mutex;
    static std::map<std::uint64_t, std::vector<LatticePtr>> memo;
    {
      std::lock_guard lock(mutex);
      for (auto const& lat : memo[g->content_hash()]) {
        if (same_group(*lat->group, *g)) {
          return lat;
        }
      }
    }
    std::shared_ptr<SubgroupLattice> lat;
    if (!cache_directory().empty()) {
      if (auto loaded = load_lattice_file(cache_directory(), g)) {
        lat = std::make_shared<SubgroupLattice>(std::move(*loaded));
      }
    }
    if (!lat) {
      lat = std::make_shared<SubgroupLattice>(compute_subgroup_lattice(g, budget));
      if (!cache_directory().empty()) {
        save_lattice_file(cache_directory(), *lat);
      }
    }
    std::lock_guard lock(mutex);
    memo[g->content_hash()].push_back(lat);
    return lat;
  }

  std::vector<Subgroup> all_subgroups(GroupPtr const& g, Budget const& budget) {
    return subgroup_lattice(g, budget)->subgroups;
  }

  std::vector<SubgroupClass> subgroup_conjugacy_classes(GroupPtr const& g, Budget const& budget) {
    return subgroup_lattice(g, budget)->classes;
  }

  std::vector<Subgroup> normal_subgroups(GroupPtr const& g) {
    auto                  lat = subgroup_lattice(g);
    std::vector<Subgroup> result;
    for (auto const& cls : lat->classes) {
      if (cls.size() == 1) {
        result.push_back(lat->subgroups[cls.representative()]);
      }
    }
    return result;
  }

  std::vector<SectionClass> section_classes(GroupPtr const& gp) {
    FiniteGroup const&        g   = *gp;
    auto                      lat = subgroup_lattice(gp);
    std::vector<SectionClass> result;
    for (auto const& cls : lat->classes) {
      Subgroup const& top   = lat->subgroups[cls.representative()];
      auto            ngens = generators_of(g, normalizer(g, top));
      std::vector<bool> done(lat->subgroups.size(), false);
      for (std::size_t j = 0; j < lat->subgroups.size(); ++j) {
        Subgroup const& s = lat->subgroups[j];
        if (s.size() > top.size()) {
          break;
        }
        if (done[j] || top.size() % s.size() != 0 || !s.subset_of(top) || !is_normal(g, s, top)) {
          continue;
        }
        auto orbit = conjugation_orbit(*lat, j, ngens);
        for (std::size_t m : orbit) {
          done[m] = true;
        }
        result.push_back({{top, lat->subgroups[orbit.front()]}, cls.size() * orbit.size()});
      }
    }
    return result;
  }

  GroupPtr section_quotient(FiniteGroup const& g, Section const& s) {
    auto top = subgroup_as_group(g, s.top);
    std::vector<Element> bottom;
    for (std::size_t i = 0; i < s.top.size(); ++i) {
      if (s.bottom.contains(top.embedding[i])) {
        bottom.push_back(static_cast<Element>(i));
      }
    }
    return quotient_group(*top.group, Subgroup(top.group->order(), bottom)).group;
  }

  std::vector<Subquotient> subquotients_up_to_iso(GroupPtr const& gp) {
    std::vector<Subquotient> types;
    for (auto const& sc : section_classes(gp)) {
      GroupPtr q     = section_quotient(*gp, sc.representative);
      bool     known = false;
      for (auto const& t : types) {
        if (t.group->order() == q->order() && is_isomorphic(*t.group, *q)) {
          known = true;
          break;
        }
      }
      if (!known) {
        types.push_back({q, sc.representative});
      }
    }
    std::stable_sort(types.begin(), types.end(), [](Subquotient const& a, Subquotient const& b) {
      return a.group->order() < b.group->order();
    });
    return types;
  }

  std::optional<QuotientWitness> find_quotient_isomorphic_to(GroupPtr const&    g,
                                                             FiniteGroup const& h) {
    if (g->order() % h.order() != 0) {
      return std::nullopt;
    }
    for (Subgroup const& n : normal_subgroups(g)) {
      if (n.size() * h.order() != g->order()) {
        continue;
      }
      Quotient q = quotient_group(*g, n);
      if (auto iso = is_isomorphic(h, *q.group)) {
        return QuotientWitness{n, std::move(q), std::move(*iso)};
      }
    }
    return std::nullopt;
  }

  bool is_subquotient(GroupPtr const& h, GroupPtr const& g) {
    if (g->order() % h->order() != 0) {
      return false;
    }
    for (auto const& t : subquotients_up_to_iso(g)) {
      if (t.group->order() == h->order() && is_isomorphic(*t.group, *h)) {
        return true;
      }
    }
    return false;
  }

}  // namespace biset
