#ifndef BISET_FIELD_HPP_
#define BISET_FIELD_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace biset {

  //! Coefficient field: the rationals (characteristic 0) or F_p.
  class FieldSpec {
   public:
    FieldSpec() = default;
    //! Throws PreconditionError unless `characteristic` is 0 or a prime below 2^62.
    explicit FieldSpec(std::uint64_t characteristic);

    static FieldSpec rationals() {
      return FieldSpec();
    }

    std::uint64_t characteristic() const noexcept {
      return p_;
    }
    bool is_rational() const noexcept {
      return p_ == 0;
    }
    //! "Q" or "F_p".
    std::string name() const;

    bool operator==(FieldSpec const&) const = default;

   private:
    std::uint64_t p_ = 0;
  };

  //! Arithmetic in F_p for p < 2^62.
  struct PrimeField {
    using value_type = std::uint64_t;

    std::uint64_t p;

    value_type reduce(long long x) const noexcept {
      long long r = x % static_cast<long long>(p);
      return static_cast<value_type>(r < 0 ? r + static_cast<long long>(p) : r);
    }
    value_type reduce(mpz_class const& x) const;
    value_type add(value_type a, value_type b) const noexcept {
      value_type s = a + b;
      return s >= p ? s - p : s;
    }
    value_type sub(value_type a, value_type b) const noexcept {
      return a >= b ? a - b : a + p - b;
    }
    value_type neg(value_type a) const noexcept {
      return a == 0 ? 0 : p - a;
    }
    value_type mul(value_type a, value_type b) const noexcept {
      return static_cast<value_type>(static_cast<unsigned __int128>(a) * b % p);
    }
    value_type pow(value_type a, std::uint64_t e) const noexcept;
    //! Throws std::domain_error on zero.
    value_type inv(value_type a) const;
  };

  //! A field element: an exact rational, or a residue mod p.
  class Scalar {
   public:
    Scalar() = default;  // rational zero
    Scalar(FieldSpec field, long long value);
    Scalar(FieldSpec field, mpq_class const& value);

    FieldSpec const& field() const noexcept {
      return field_;
    }
    bool              is_zero() const noexcept;
    mpq_class const&  rational() const noexcept {
      return q_;
    }
    std::uint64_t residue() const noexcept {
      return r_;
    }

    Scalar operator+(Scalar const& o) const;
    Scalar operator-(Scalar const& o) const;
    Scalar operator*(Scalar const& o) const;
    //! Throws std::domain_error on division by zero.
    Scalar operator/(Scalar const& o) const;
    Scalar operator-() const;
    Scalar& operator+=(Scalar const& o) {
      return *this = *this + o;
    }
    Scalar& operator*=(Scalar const& o) {
      return *this = *this * o;
    }
    bool operator==(Scalar const& o) const;

    //! "a/b" (or "a") in characteristic 0, the least residue otherwise.
    std::string to_string() const;
    //! Inverse of to_string; throws std::invalid_argument on bad text.
    static Scalar parse(FieldSpec field, std::string const& text);

   private:
    void check_same(Scalar const& o) const;

    FieldSpec     field_;
    mpq_class     q_;
    std::uint64_t r_ = 0;
  };

}  // namespace biset

#endif  // BISET_FIELD_HPP_
