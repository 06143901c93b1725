#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace dualbraid {

/// Thrown for descriptors outside the finite-type classification.
class InvalidTypeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class Family : char { A = 'A', B = 'B', D = 'D', E = 'E', F = 'F', H = 'H', I = 'I' };

/// One irreducible factor of a finite Coxeter type.
struct IrreducibleType {
  Family family;
  int rank;
  int bond = 0;  // m for I2(m), unused otherwise

  friend bool operator==(const IrreducibleType&, const IrreducibleType&) = default;

  std::string str() const {
    std::string s(1, static_cast<char>(family));
    if (family == Family::I) return s + "2(" + std::to_string(bond) + ")";
    return s + std::to_string(rank);
  }

  void validate() const {
    auto fail = [&] { throw InvalidTypeError("not a finite Coxeter type: " + str()); };
    switch (family) {
      case Family::A: if (rank < 1) fail(); break;
      case Family::B: if (rank < 2) fail(); break;
      case Family::D: if (rank < 3) fail(); break;
      case Family::E: if (rank < 6 || rank > 8) fail(); break;
      case Family::F: if (rank != 4) fail(); break;
      case Family::H: if (rank < 3 || rank > 4) fail(); break;
      case Family::I: if (rank != 2 || bond < 3) fail(); break;
    }
  }

  /// Invariant degrees d_1 <= ... <= d_n (standard classification data).
  std::vector<int> degrees() const {
    std::vector<int> d;
    switch (family) {
      case Family::A:
        for (int i = 2; i <= rank + 1; ++i) d.push_back(i);
        break;
      case Family::B:
        for (int i = 1; i <= rank; ++i) d.push_back(2 * i);
        break;
      case Family::D:
        for (int i = 1; i < rank; ++i) d.push_back(2 * i);
        d.push_back(rank);
        std::sort(d.begin(), d.end());
        break;
      case Family::E:
        if (rank == 6) d = {2, 5, 6, 8, 9, 12};
        else if (rank == 7) d = {2, 6, 8, 10, 12, 14, 18};
        else d = {2, 8, 12, 14, 18, 20, 24, 30};
        break;
      case Family::F: d = {2, 6, 8, 12}; break;
      case Family::H: d = rank == 3 ? std::vector<int>{2, 6, 10} : std::vector<int>{2, 12, 20, 30}; break;
      case Family::I: d = {2, bond}; break;
    }
    return d;
  }

  int coxeter_number() const { return degrees().back(); }
  int num_reflections() const { return coxeter_number() * rank / 2; }
  long long group_order() const {
    long long o = 1;
    for (int d : degrees()) o *= d;
    return o;
  }
};

/// A finite Coxeter type: a product of irreducible factors, e.g. "A2xA1".
struct TypeDescriptor {
  std::vector<IrreducibleType> factors;

  static TypeDescriptor parse(const std::string& text) {
    TypeDescriptor desc;
    size_t pos = 0;
    auto syntax = [&](const std::string& what) {
      throw InvalidTypeError("cannot parse type \"" + text + "\" at position " +
                             std::to_string(pos) + ": " + what);
    };
    while (pos < text.size()) {
      char f = text[pos];
      if (std::string("ABDEFHI").find(f) == std::string::npos) syntax("expected family letter");
      ++pos;
      size_t digits = 0;
      long long rank = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        rank = rank * 10 + (text[pos] - '0');
        if (rank > 1000) syntax("rank out of range");
        ++pos;
        ++digits;
      }
      if (digits == 0) syntax("expected rank");
      IrreducibleType t{static_cast<Family>(f), static_cast<int>(rank), 0};
      if (f == 'I') {
        if (pos >= text.size() || text[pos] != '(') syntax("I2 needs (m)");
        ++pos;
        long long m = 0;
        digits = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          m = m * 10 + (text[pos] - '0');
          if (m > 100000) syntax("bond out of range");
          ++pos;
          ++digits;
        }
        if (digits == 0 || pos >= text.size() || text[pos] != ')') syntax("I2 needs (m)");
        ++pos;
        t.bond = static_cast<int>(m);
      }
      t.validate();
      desc.factors.push_back(t);
      if (pos < text.size()) {
        if (text[pos] != 'x' && text[pos] != 'X') syntax("expected 'x' between factors");
        ++pos;
        if (pos == text.size()) syntax("trailing 'x'");
      }
    }
    if (desc.factors.empty()) throw InvalidTypeError("empty type descriptor");
    return desc;
  }

  std::string str() const {
    std::string s;
    for (size_t i = 0; i < factors.size(); ++i) {
      if (i) s += 'x';
      s += factors[i].str();
    }
    return s;
  }

  bool irreducible() const { return factors.size() == 1; }
  int rank() const {
    int n = 0;
    for (const auto& f : factors) n += f.rank;
    return n;
  }
  int num_reflections() const {
    int n = 0;
    for (const auto& f : factors) n += f.num_reflections();
    return n;
  }
  /// Order of Coxeter elements: lcm of the factors' Coxeter numbers.
  long long coxeter_element_order() const {
    long long h = 1;
    for (const auto& f : factors) h = std::lcm<long long>(h, f.coxeter_number());
    return h;
  }
  long long group_order() const {
    long long o = 1;
    for (const auto& f : factors) {
      long long fo = f.group_order();
      if (o > (1LL << 62) / fo) throw InvalidTypeError("group order overflows: " + str());
      o *= fo;
    }
    return o;
  }
  std::vector<int> degrees() const {
    std::vector<int> d;
    for (const auto& f : factors) {
      auto fd = f.degrees();
      d.insert(d.end(), fd.begin(), fd.end());
    }
    return d;
  }
};

namespace detail {
inline __int128 gcd128(__int128 x, __int128 y) {
  while (y != 0) {
    __int128 t = x % y;
    x = y;
    y = t;
  }
  return x < 0 ? -x : x;
}
}  // namespace detail

/// Number of simple elements of the dual monoid: per irreducible factor,
/// prod_i (d_i + h) / d_i; multiplicative over factors. The quotient is exact;
/// a remainder means corrupted degree data.
inline long long catalan_number(const TypeDescriptor& desc) {
  __int128 result = 1;
  for (const auto& f : desc.factors) {
    auto degs = f.degrees();
    int h = f.coxeter_number();
    __int128 num = 1, den = 1;
    for (int d : degs) {
      num *= d + h;
      den *= d;
      __int128 g = detail::gcd128(num, den);
      num /= g;
      den /= g;
    }
    if (den != 1)
      throw std::logic_error("catalan_number: non-integral value for " + f.str());
    result *= num;
  }
  if (result > (__int128(1) << 62)) throw std::overflow_error("catalan_number overflow");
  return static_cast<long long>(result);
}

}  // namespace dualbraid
