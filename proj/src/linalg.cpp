#include "biset/linalg.hpp"

namespace biset {

  namespace {
    // Clears denominators of row i.
    SparseVector<mpz_class> integral_row(Matrix const& m, std::size_t i) {
      mpz_class den = 1;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m.at(i, j).rational().get_den_mpz_t());
      }
      SparseVector<mpz_class> row;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        mpq_class const& q = m.at(i, j).rational();
        if (sgn(q) != 0) {
          row.emplace_back(static_cast<std::uint32_t>(j), q.get_num() * (den / q.get_den()));
        }
      }
      return row;
    }

    SparseVector<std::uint64_t> residue_row(Matrix const& m, std::size_t i) {
      SparseVector<std::uint64_t> row;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (!m.at(i, j).is_zero()) {
          row.emplace_back(static_cast<std::uint32_t>(j), m.at(i, j).residue());
        }
      }
      return row;
    }

    template <typename Span, typename Convert>
    std::vector<std::vector<Scalar>> null_space_from(Span const& span, std::size_t cols,
                                                     Convert const& convert) {
      std::vector<std::vector<Scalar>> basis;
      for (std::uint32_t j = 0; j < cols; ++j) {
        if (span.pivot_row(j)) {
          continue;
        }
        std::vector<Scalar> x(cols, convert(typename Span::coeff_type(0)));
        for (auto const& [c, v] : span.annihilator(j)) {
          x[c] = convert(v);
        }
        basis.push_back(std::move(x));
      }
      return basis;
    }
  }  // namespace

  Matrix Matrix::identity(FieldSpec field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m.at(i, i) = Scalar(field, 1);
    }
    return m;
  }

  Matrix Matrix::operator*(Matrix const& other) const {
    if (cols_ != other.rows_ || !(field_ == other.field_)) {
      throw PreconditionError("matrix product shape or field mismatch");
    }
    Matrix r(field_, rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        if (at(i, k).is_zero()) {
          continue;
        }
        for (std::size_t j = 0; j < other.cols_; ++j) {
          r.at(i, j) += at(i, k) * other.at(k, j);
        }
      }
    }
    return r;
  }

  std::vector<Scalar> Matrix::apply(std::vector<Scalar> const& x) const {
    if (x.size() != cols_) {
      throw PreconditionError("vector length does not match matrix columns");
    }
    std::vector<Scalar> y(rows_, Scalar(field_, 0));
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        y[i] += at(i, j) * x[j];
      }
    }
    return y;
  }

  bool Matrix::operator==(Matrix const& other) const {
    return field_ == other.field_ && rows_ == other.rows_ && cols_ == other.cols_
           && data_ == other.data_;
  }

  std::size_t rank(Matrix const& m) {
    if (m.field().is_rational()) {
      RationalSpan span(m.cols());
      for (std::size_t i = 0; i < m.rows(); ++i) {
        span.add(integral_row(m, i));
      }
      return span.rank();
    }
    ModularSpan span(m.cols(), PrimeField{m.field().characteristic()});
    for (std::size_t i = 0; i < m.rows(); ++i) {
      span.add(residue_row(m, i));
    }
    return span.rank();
  }

  std::vector<std::vector<Scalar>> null_space(Matrix const& m) {
    FieldSpec const f = m.field();
    if (f.is_rational()) {
      RationalSpan span(m.cols());
      for (std::size_t i = 0; i < m.rows(); ++i) {
        span.add(integral_row(m, i));
      }
      return null_space_from(span, m.cols(), [f](mpq_class const& v) { return Scalar(f, v); });
    }
    ModularSpan span(m.cols(), PrimeField{f.characteristic()});
    for (std::size_t i = 0; i < m.rows(); ++i) {
      span.add(residue_row(m, i));
    }
    return null_space_from(span, m.cols(), [f](std::uint64_t v) {
      return Scalar(f, static_cast<long long>(v));
    });
  }

  std::size_t rank_mod_p(IntMatrix const& m, std::uint64_t p) {
    PrimeField                              f{p};
    std::vector<std::vector<std::uint64_t>> a;
    a.reserve(m.size());
    for (auto const& row : m) {
      std::vector<std::uint64_t> r(row.size());
      for (std::size_t j = 0; j < row.size(); ++j) {
        r[j] = f.reduce(row[j]);
      }
      a.push_back(std::move(r));
    }
    std::size_t const cols = a.empty() ? 0 : a[0].size();
    std::size_t       rank = 0;
    for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
      std::size_t piv = rank;
      while (piv < a.size() && a[piv][c] == 0) {
        ++piv;
      }
      if (piv == a.size()) {
        continue;
      }
      std::swap(a[piv], a[rank]);
      std::uint64_t const inv = f.inv(a[rank][c]);
      for (std::size_t j = c; j < cols; ++j) {
        a[rank][j] = f.mul(a[rank][j], inv);
      }
      for (std::size_t i = rank + 1; i < a.size(); ++i) {
        std::uint64_t const x = a[i][c];
        if (x == 0) {
          continue;
        }
        for (std::size_t j = c; j < cols; ++j) {
          a[i][j] = f.sub(a[i][j], f.mul(x, a[rank][j]));
        }
      }
      ++rank;
    }
    return rank;
  }

  SparseVector<mpz_class> sparse_row(std::vector<long long> const& row) {
    SparseVector<mpz_class> v;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0) {
        v.emplace_back(static_cast<std::uint32_t>(j), mpz_class(static_cast<long>(row[j])));
      }
    }
    return v;
  }

  std::size_t rank_rational(IntMatrix const& m) {
    RationalSpan span(m.empty() ? 0 : m[0].size());
    for (auto const& row : m) {
      span.add(sparse_row(row));
    }
    return span.rank();
  }

  std::vector<std::vector<mpq_class>> null_space_rational(IntMatrix const& m) {
    std::size_t const cols = m.empty() ? 0 : m[0].size();
    RationalSpan      span(cols);
    for (auto const& row : m) {
      span.add(sparse_row(row));
    }
    std::vector<std::vector<mpq_class>> basis;
    for (std::uint32_t j = 0; j < cols; ++j) {
      if (span.pivot_row(j)) {
        continue;
      }
      std::vector<mpq_class> x(cols, mpq_class(0));
      for (auto const& [c, v] : span.annihilator(j)) {
        x[c] = v;
      }
      basis.push_back(std::move(x));
    }
    return basis;
  }

}  // namespace biset
