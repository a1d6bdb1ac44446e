#include "biset/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>

namespace biset {

  namespace {
    using Kind = GroupSpec::Kind;

    std::size_t ipow(std::size_t b, std::size_t e) {
      std::size_t r = 1;
      while (e-- > 0) {
        r *= b;
      }
      return r;
    }

    GroupPtr table_group(std::string name, std::size_t n,
                         std::function<Element(Element, Element)> const& mul) {
      std::vector<Element> table(n * n);
      for (Element x = 0; x < n; ++x) {
        for (Element y = 0; y < n; ++y) {
          table[std::size_t{x} * n + y] = mul(x, y);
        }
      }
      return std::make_shared<FiniteGroup const>(std::move(name), n, std::move(table));
    }

    GroupPtr permutation_group(std::string name, std::size_t degree, bool even_only) {
      std::vector<std::vector<std::size_t>> perms;
      std::vector<std::size_t>              p(degree);
      std::iota(p.begin(), p.end(), 0);
      do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < degree; ++i) {
          for (std::size_t j = i + 1; j < degree; ++j) {
            inversions += p[i] > p[j];
          }
        }
        if (!even_only || inversions % 2 == 0) {
          perms.push_back(p);
        }
      } while (std::next_permutation(p.begin(), p.end()));
      std::map<std::vector<std::size_t>, Element> index;
      for (std::size_t i = 0; i < perms.size(); ++i) {
        index[perms[i]] = static_cast<Element>(i);
      }
      // (s t)(i) = s(t(i))
      return table_group(std::move(name), perms.size(), [&](Element a, Element b) {
        std::vector<std::size_t> c(degree);
        for (std::size_t i = 0; i < degree; ++i) {
          c[i] = perms[a][perms[b][i]];
        }
        return index.at(c);
      });
    }

    void check(bool ok, std::string const& msg) {
      if (!ok) {
        throw PreconditionError(msg);
      }
    }

    void validate(GroupSpec const& s) {
      auto const& p = s.params;
      switch (s.kind) {
        case Kind::Cyclic:
          check(p.size() == 1 && p[0] >= 1, "C<n> needs n >= 1");
          break;
        case Kind::AbelianProduct:
          check(p.size() == 2 && p[0] >= 1 && p[1] >= 1, "C<n>^<k> needs n, k >= 1");
          break;
        case Kind::Dihedral:
          check(p.size() == 1 && p[0] >= 2 && p[0] % 2 == 0, "D<2n> needs an even order >= 2");
          break;
        case Kind::Symmetric:
          check(p.size() == 1 && p[0] >= 1 && p[0] <= 4, "S<n> needs 1 <= n <= 4");
          break;
        case Kind::Alternating:
          check(p.size() == 1 && p[0] >= 1 && p[0] <= 5, "A<n> needs 1 <= n <= 5");
          break;
        case Kind::Extraspecial:
          check(p.size() == 1 && is_prime(p[0]) && p[0] % 2 == 1,
                "X(p^3) needs p an odd prime");
          break;
        case Kind::Modular:
          check(p.size() == 2 && is_prime(p[0]) && p[1] >= 2,
                "M(p,n) needs p prime and n >= 2");
          break;
        case Kind::Product:
          check(s.factors.size() == 2, "product needs two factors");
          validate(s.factors[0]);
          validate(s.factors[1]);
          break;
      }
    }

    std::size_t parse_number(std::string const& text, std::size_t& pos) {
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
      if (start == pos || pos - start > 6) {
        throw ParseError("expected a number at position " + std::to_string(start) + " in '"
                         + text + "'");
      }
      return std::stoul(text.substr(start, pos - start));
    }

    void expect_char(std::string const& text, std::size_t& pos, char c) {
      if (pos >= text.size() || text[pos] != c) {
        throw ParseError(std::string("expected '") + c + "' at position " + std::to_string(pos)
                         + " in '" + text + "'");
      }
      ++pos;
    }

    GroupSpec parse_factor(std::string const& text) {
      std::size_t pos = 0;
      GroupSpec   s;
      if (text == "1") {
        return GroupSpec::cyclic(1);
      }
      if (text.empty()) {
        throw ParseError("empty group factor");
      }
      char head = text[pos++];
      switch (head) {
        case 'C': {
          std::size_t n = parse_number(text, pos);
          if (pos < text.size() && text[pos] == '^') {
            ++pos;
            s = GroupSpec::abelian_power(n, parse_number(text, pos));
          } else {
            s = GroupSpec::cyclic(n);
          }
          break;
        }
        case 'D':
          s = GroupSpec::dihedral(parse_number(text, pos));
          break;
        case 'S':
          s = GroupSpec::symmetric(parse_number(text, pos));
          break;
        case 'A':
          s = GroupSpec::alternating(parse_number(text, pos));
          break;
        case 'X': {
          expect_char(text, pos, '(');
          std::size_t cube = parse_number(text, pos);
          expect_char(text, pos, ')');
          std::size_t p = 2;
          while (p * p * p < cube) {
            ++p;
          }
          if (p * p * p != cube) {
            throw ParseError("X(...) needs the cube of a prime, got " + std::to_string(cube));
          }
          s = GroupSpec::extraspecial(p);
          break;
        }
        case 'M': {
          expect_char(text, pos, '(');
          std::size_t p = parse_number(text, pos);
          expect_char(text, pos, ',');
          std::size_t n = parse_number(text, pos);
          expect_char(text, pos, ')');
          s = GroupSpec::modular(p, n);
          break;
        }
        default:
          throw ParseError("unknown group family '" + std::string(1, head) + "' in '" + text
                           + "'");
      }
      if (pos != text.size()) {
        throw ParseError("trailing characters in '" + text + "'");
      }
      try {
        validate(s);
      } catch (PreconditionError const& e) {
        throw ParseError(e.what());
      }
      return s;
    }

    std::vector<std::size_t> prime_partition(FiniteGroup const& g, std::size_t p) {
      // s_k = log_p #{x : x^(p^k) = 1} = sum_i min(lambda_i, k)
      std::vector<std::size_t> s{0};
      std::size_t              pk = 1;
      while (true) {
        pk *= p;
        std::size_t count = 0;
        for (Element x = 0; x < g.order(); ++x) {
          count += (pk % g.element_order(x) == 0);
        }
        std::size_t e = 0;
        while (count > 1) {
          count /= p;
          ++e;
        }
        if (e == s.back()) {
          break;
        }
        s.push_back(e);
      }
      // number of parts >= k is s_k - s_{k-1}
      std::vector<std::size_t> lambda;
      for (std::size_t k = s.size() - 1; k >= 1; --k) {
        std::size_t at_least_k   = s[k] - s[k - 1];
        std::size_t at_least_k1  = (k + 1 < s.size()) ? s[k + 1] - s[k] : 0;
        for (std::size_t i = 0; i < at_least_k - at_least_k1; ++i) {
          lambda.push_back(k);
        }
      }
      return lambda;  // decreasing
    }
  }  // namespace

  GroupSpec GroupSpec::cyclic(std::size_t n) {
    return {Kind::Cyclic, {n}, {}};
  }
  GroupSpec GroupSpec::abelian_power(std::size_t n, std::size_t k) {
    return {Kind::AbelianProduct, {n, k}, {}};
  }
  GroupSpec GroupSpec::dihedral(std::size_t order) {
    return {Kind::Dihedral, {order}, {}};
  }
  GroupSpec GroupSpec::symmetric(std::size_t n) {
    return {Kind::Symmetric, {n}, {}};
  }
  GroupSpec GroupSpec::alternating(std::size_t n) {
    return {Kind::Alternating, {n}, {}};
  }
  GroupSpec GroupSpec::extraspecial(std::size_t p) {
    return {Kind::Extraspecial, {p}, {}};
  }
  GroupSpec GroupSpec::modular(std::size_t p, std::size_t n) {
    return {Kind::Modular, {p, n}, {}};
  }
  GroupSpec GroupSpec::product(GroupSpec a, GroupSpec b) {
    return {Kind::Product, {}, {std::move(a), std::move(b)}};
  }

  GroupSpec parse_group_spec(std::string const& text) {
    std::vector<std::string> parts;
    std::string              cur;
    int                      depth = 0;
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        continue;
      }
      depth += (c == '(') - (c == ')');
      if (c == 'x' && depth == 0) {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    GroupSpec spec = parse_factor(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) {
      spec = GroupSpec::product(std::move(spec), parse_factor(parts[i]));
    }
    return spec;
  }

  std::string to_string(GroupSpec const& s) {
    auto const& p = s.params;
    switch (s.kind) {
      case Kind::Cyclic:
        return p[0] == 1 ? "1" : "C" + std::to_string(p[0]);
      case Kind::AbelianProduct:
        return "C" + std::to_string(p[0]) + "^" + std::to_string(p[1]);
      case Kind::Dihedral:
        return "D" + std::to_string(p[0]);
      case Kind::Symmetric:
        return "S" + std::to_string(p[0]);
      case Kind::Alternating:
        return "A" + std::to_string(p[0]);
      case Kind::Extraspecial:
        return "X(" + std::to_string(p[0] * p[0] * p[0]) + ")";
      case Kind::Modular:
        return "M(" + std::to_string(p[0]) + "," + std::to_string(p[1]) + ")";
      case Kind::Product:
        return to_string(s.factors[0]) + "x" + to_string(s.factors[1]);
    }
    return "?";
  }

  GroupPtr renamed(GroupPtr const& g, std::string name) {
    if (g->name() == name) {
      return g;
    }
    return std::make_shared<FiniteGroup const>(std::move(name), g->order(), g->table());
  }

  GroupPtr build_group(GroupSpec const& s) {
    validate(s);
    std::string const name = to_string(s);
    auto const&       p    = s.params;
    switch (s.kind) {
      case Kind::Cyclic:
        return renamed(cyclic_group(p[0]), name);
      case Kind::AbelianProduct: {
        GroupPtr g = cyclic_group(p[0]);
        for (std::size_t i = 1; i < p[1]; ++i) {
          g = direct_product(g, cyclic_group(p[0]));
        }
        return renamed(g, name);
      }
      case Kind::Dihedral: {
        // r^i s^j -> i + n j
        std::size_t const n = p[0] / 2;
        return table_group(name, p[0], [n](Element x, Element y) {
          std::size_t i = x % n, a = x / n, k = y % n, b = y / n;
          std::size_t r = a == 0 ? (i + k) % n : (i + n - k) % n;
          return static_cast<Element>(r + n * ((a + b) % 2));
        });
      }
      case Kind::Symmetric:
        return permutation_group(name, p[0], false);
      case Kind::Alternating:
        return permutation_group(name, p[0], true);
      case Kind::Extraspecial: {
        // Heisenberg group: (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')
        std::size_t const q = p[0];
        return table_group(name, q * q * q, [q](Element x, Element y) {
          std::size_t a = x % q, b = (x / q) % q, c = x / (q * q);
          std::size_t a2 = y % q, b2 = (y / q) % q, c2 = y / (q * q);
          return static_cast<Element>((a + a2) % q + q * ((b + b2) % q)
                                      + q * q * ((c + c2 + a * b2) % q));
        });
      }
      case Kind::Modular: {
        // a^i b^j -> i + m j, with b^j a^k b^-j = a^(k r^j)
        std::size_t const m = ipow(p[0], p[1]);
        std::size_t const r = 1 + ipow(p[0], p[1] - 1);
        std::vector<std::size_t> rpow(m);
        rpow[0] = 1;
        for (std::size_t j = 1; j < m; ++j) {
          rpow[j] = rpow[j - 1] * r % m;
        }
        return table_group(name, m * m, [m, &rpow](Element x, Element y) {
          std::size_t i = x % m, j = x / m, k = y % m, l = y / m;
          return static_cast<Element>((i + k * rpow[j]) % m + m * ((j + l) % m));
        });
      }
      case Kind::Product:
        return renamed(direct_product(build_group(s.factors[0]), build_group(s.factors[1])), name);
    }
    throw PreconditionError("unknown group spec");
  }

  GroupPtr build_group(std::string const& text) {
    return build_group(parse_group_spec(text));
  }

  std::vector<std::size_t> abelian_invariants(FiniteGroup const& g) {
    if (!g.is_abelian()) {
      throw PreconditionError("abelian invariants of a non-abelian group");
    }
    // elementary divisors per prime, then combine into invariant factors
    std::vector<std::vector<std::size_t>> per_prime;
    for (std::size_t p : prime_divisors(g.order())) {
      std::vector<std::size_t> powers;
      for (std::size_t e : prime_partition(g, p)) {
        powers.push_back(ipow(p, e));
      }
      per_prime.push_back(std::move(powers));
    }
    std::size_t rank = 0;
    for (auto const& v : per_prime) {
      rank = std::max(rank, v.size());
    }
    std::vector<std::size_t> factors(rank, 1);
    for (auto const& v : per_prime) {
      // v is decreasing; the largest goes into the last invariant factor
      for (std::size_t i = 0; i < v.size(); ++i) {
        factors[rank - 1 - i] *= v[i];
      }
    }
    return factors;
  }

  GroupPtr abelian_group(std::vector<std::size_t> const& orders) {
    GroupPtr g = cyclic_group(1);
    bool     first = true;
    for (std::size_t n : orders) {
      if (n == 1) {
        continue;
      }
      g     = first ? cyclic_group(n) : direct_product(g, cyclic_group(n));
      first = false;
    }
    return g;
  }

  std::string describe_group(FiniteGroup const& g) {
    if (g.order() == 1) {
      return "1";
    }
    if (g.is_abelian()) {
      auto        inv = abelian_invariants(g);
      std::string name;
      for (std::size_t i = 0; i < inv.size();) {
        std::size_t j = i;
        while (j < inv.size() && inv[j] == inv[i]) {
          ++j;
        }
        if (!name.empty()) {
          name += "x";
        }
        name += "C" + std::to_string(inv[i]);
        if (j - i > 1) {
          name += "^" + std::to_string(j - i);
        }
        i = j;
      }
      return name;
    }
    static std::vector<std::string> const known = {
        "S3",     "D8",     "M(2,2)", "D10",    "A4",    "D12",  "D14",    "D16",
        "D8xC2",  "D18",    "C3xS3",  "D20",    "A4xC2", "S4",   "X(27)",  "D8xC3",
        "D8xC2^2", "A4xC3", "S3xS3",  "A5",     "D24",   "S3xC4", "D8xC4", "D16xC2"};
    for (auto const& name : known) {
      GroupSpec spec = parse_group_spec(name);
      // cheap order filter before building
      GroupPtr candidate;
      try {
        candidate = build_group(spec);
      } catch (std::exception const&) {
        continue;
      }
      if (candidate->order() == g.order() && is_isomorphic(g, *candidate)) {
        return name;
      }
    }
    return "G" + std::to_string(g.order());
  }

  std::vector<GroupSpec> catalog_specs(std::size_t max_order) {
    std::vector<std::string> const all = {
        "1",      "C2",     "C3",    "C4",     "C2^2",   "C5",     "C6",     "S3",
        "C7",     "C8",     "C2xC4", "C2^3",   "D8",     "C9",     "C3^2",   "C10",
        "D10",    "C11",    "C12",   "C2xC6",  "D12",    "A4",     "C13",    "C14",
        "D14",    "C15",    "C16",   "C2xC8",  "C4^2",   "C2^2xC4", "C2^4",  "D16",
        "M(2,2)", "D8xC2",  "S4",    "A4xC2",  "X(27)"};
    std::vector<GroupSpec> result;
    for (auto const& text : all) {
      GroupSpec s = parse_group_spec(text);
      if (build_group(s)->order() <= max_order) {
        result.push_back(std::move(s));
      }
    }
    return result;
  }

}  // namespace biset
