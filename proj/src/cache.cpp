#include "biset/cache.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace biset {

  namespace fs = std::filesystem;

  namespace {
    template <typename Int>
    void write_list(std::ostream& out, std::vector<Int> const& v) {
      out << v.size();
      for (auto x : v) {
        out << ' ' << x;
      }
      out << '\n';
    }

    template <typename Int>
    bool read_list(std::istream& in, std::vector<Int>& v, std::size_t bound) {
      std::size_t len = 0;
      if (!(in >> len) || len > bound) {
        return false;
      }
      v.resize(len);
      for (auto& x : v) {
        if (!(in >> x) || static_cast<std::size_t>(x) >= bound) {
          return false;
        }
      }
      return true;
    }

    bool expect(std::istream& in, std::string const& word) {
      std::string w;
      return (in >> w) && w == word;
    }

    std::optional<std::string> slurp(std::string const& path) {
      std::ifstream in(path);
      if (!in) {
        return std::nullopt;
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }
  }  // namespace

  std::string hash_hex(std::uint64_t h) {
    static char const* digits = "0123456789abcdef";
    std::string        s(16, '0');
    for (int i = 15; i >= 0; --i) {
      s[i] = digits[h & 0xF];
      h >>= 4;
    }
    return s;
  }

  void write_file_atomically(std::string const& path, std::string const& contents) {
    fs::path target(path);
    if (target.has_parent_path()) {
      fs::create_directories(target.parent_path());
    }
    std::random_device rd;
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(rd());
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) {
        throw std::runtime_error("cannot write " + tmp.string());
      }
      out << contents;
    }
    fs::rename(tmp, target);
  }

  std::string lattice_cache_path(std::string const& dir, FiniteGroup const& g) {
    return (fs::path(dir) / ("lattice-" + hash_hex(g.content_hash()) + ".txt")).string();
  }

  void save_lattice_file(std::string const& dir, SubgroupLattice const& lat) {
    FiniteGroup const& g = *lat.group;
    std::ostringstream out;
    out << "biset-lattice " << kLatticeCacheVersion << '\n'
        << "hash " << hash_hex(g.content_hash()) << '\n'
        << "order " << g.order() << '\n'
        << "subgroups " << lat.subgroups.size() << '\n';
    for (Subgroup const& s : lat.subgroups) {
      write_list(out, s.elements());
    }
    out << "classes " << lat.classes.size() << '\n';
    for (auto const& c : lat.classes) {
      write_list(out, c.members);
    }
    out << "end\n";
    write_file_atomically(lattice_cache_path(dir, g), out.str());
  }

  std::optional<SubgroupLattice> load_lattice_file(std::string const& dir, GroupPtr const& g) {
    auto text = slurp(lattice_cache_path(dir, *g));
    if (!text) {
      return std::nullopt;
    }
    std::istringstream in(*text);
    int                version = 0;
    std::string        hash;
    std::size_t        order = 0, count = 0;
    if (!expect(in, "biset-lattice") || !(in >> version) || version != kLatticeCacheVersion
        || !expect(in, "hash") || !(in >> hash) || hash != hash_hex(g->content_hash())
        || !expect(in, "order") || !(in >> order) || order != g->order()
        || !expect(in, "subgroups") || !(in >> count)) {
      return std::nullopt;
    }
    SubgroupLattice lat;
    lat.group = g;
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<Element> elts;
      if (!read_list(in, elts, order)) {
        return std::nullopt;
      }
      lat.subgroups.emplace_back(order, std::move(elts));
    }
    if (!expect(in, "classes") || !(in >> count)) {
      return std::nullopt;
    }
    for (std::size_t i = 0; i < count; ++i) {
      SubgroupClass c;
      if (!read_list(in, c.members, lat.subgroups.size()) || c.members.empty()) {
        return std::nullopt;
      }
      lat.classes.push_back(std::move(c));
    }
    if (!expect(in, "end")) {
      return std::nullopt;
    }
    lat.reindex();
    return lat;
  }

  std::string basis_cache_path(std::string const& dir, FiniteGroup const& left,
                               FiniteGroup const& right) {
    return (fs::path(dir)
            / ("basis-" + hash_hex(left.content_hash()) + "-" + hash_hex(right.content_hash())
               + ".txt"))
        .string();
  }

  void save_basis_file(std::string const& dir, FiniteGroup const& left, FiniteGroup const& right,
                       BasisRecord const& record) {
    std::ostringstream out;
    out << "biset-basis " << kBasisCacheVersion << '\n'
        << "left " << hash_hex(left.content_hash()) << ' ' << left.order() << '\n'
        << "right " << hash_hex(right.content_hash()) << ' ' << right.order() << '\n'
        << "labels " << record.labels.size() << '\n';
    for (std::size_t i = 0; i < record.labels.size(); ++i) {
      auto const& z = record.sizes[i];
      out << z[0] << ' ' << z[1] << ' ' << z[2] << ' ' << z[3] << ' ' << z[4] << ' ' << z[5]
          << ' ';
      write_list(out, record.labels[i].elements());
    }
    out << "end\n";
    write_file_atomically(basis_cache_path(dir, left, right), out.str());
  }

  std::optional<BasisRecord> load_basis_file(std::string const& dir, FiniteGroup const& left,
                                             FiniteGroup const& right) {
    auto text = slurp(basis_cache_path(dir, left, right));
    if (!text) {
      return std::nullopt;
    }
    std::istringstream in(*text);
    int                version = 0;
    std::string        hl, hr;
    std::size_t        ol = 0, orr = 0, count = 0;
    if (!expect(in, "biset-basis") || !(in >> version) || version != kBasisCacheVersion
        || !expect(in, "left") || !(in >> hl >> ol) || hl != hash_hex(left.content_hash())
        || !expect(in, "right") || !(in >> hr >> orr) || hr != hash_hex(right.content_hash())
        || !expect(in, "labels") || !(in >> count)) {
      return std::nullopt;
    }
    std::size_t const n = ol * orr;
    BasisRecord       record;
    for (std::size_t i = 0; i < count; ++i) {
      LabelSizes z{};
      for (auto& v : z) {
        if (!(in >> v)) {
          return std::nullopt;
        }
      }
      std::vector<Element> elts;
      if (!read_list(in, elts, n) || elts.size() != z[0]) {
        return std::nullopt;
      }
      record.labels.emplace_back(n, std::move(elts));
      record.sizes.push_back(z);
    }
    if (!expect(in, "end")) {
      return std::nullopt;
    }
    return record;
  }

}  // namespace biset
