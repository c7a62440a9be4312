#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace latgraph {

using Int = mpz_class;
using Rat = mpq_class;

using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;
using IMat = std::vector<IVec>;
using QMat = std::vector<QVec>;

// Raised on malformed textual input (edge lists, PD codes, lattice files).
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an enumeration exceeds its configured budget.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a pipeline invariant that should hold for valid inputs fails.
struct internal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rat rat(long p, long q = 1) { return Rat(p, q); }

// Representative of x in [0, m) for a positive rational modulus m.
inline Rat rat_mod(const Rat& x, const Rat& m) {
  Rat q = x / m;
  Int fl = q.get_num() / q.get_den();
  if (q < 0 && fl * q.get_den() != q.get_num()) fl -= 1;
  Rat r = x - Rat(fl) * m;
  r.canonicalize();
  return r;
}

inline Int int_mod(const Int& x, const Int& m) {
  Int r = x % m;
  if (r < 0) r += m;
  return r;
}

inline std::string rat_str(const Rat& x) { return x.get_str(); }

inline Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw parse_error("bad rational: " + s);
  r.canonicalize();
  return r;
}

}  // namespace latgraph
