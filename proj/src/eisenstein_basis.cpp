#include "shiftconv/eisenstein_basis.hpp"

#include "shiftconv/arith.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

namespace shiftconv {

namespace {

// Cusp constants only feed a linear solve and a 1e-10 indicator check.
constexpr int kCuspDigits = 40;
constexpr int kLadderDigits = 25;
constexpr int kSeriesDigits = 35;

using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

Real abs_c(const Complex& z) { return sqrt(z.real() * z.real() + z.imag() * z.imag()); }

Complex times_int(const Complex& z, std::int64_t k) { return Complex(z.real() * k, z.imag() * k); }

std::vector<std::int64_t> sigma1_table(std::int64_t n_max) {
  std::vector<std::int64_t> s(static_cast<std::size_t>(n_max + 1), 0);
  for (std::int64_t d = 1; d <= n_max; ++d)
    for (std::int64_t m = d; m <= n_max; m += d) s[static_cast<std::size_t>(m)] += d;
  return s;
}

// b[n * order + j]: coefficient of zeta^j in sum_{d|n} chi(n/d) conj(chi)(d) d.
std::vector<std::int64_t> twisted_table(const DirichletCharacter& chi, std::int64_t n_max) {
  const int order = chi.order;
  std::vector<std::int64_t> b(static_cast<std::size_t>((n_max + 1) * order), 0);
  for (std::int64_t d = 1; d <= n_max; ++d) {
    const int ed = chi.value_exponent(d);
    if (ed < 0) continue;
    for (std::int64_t e = 1; d * e <= n_max; ++e) {
      const int ee = chi.value_exponent(e);
      if (ee < 0) continue;
      const int j = ((ee - ed) % order + order) % order;
      b[static_cast<std::size_t>(d * e * order + j)] += d;
    }
  }
  return b;
}

// Integer tables shared by all evaluations, grown on demand.
struct TableCache {
  std::mutex mutex;
  std::vector<std::int64_t> sigma;
  std::map<std::string, std::vector<std::int64_t>> twisted;
};

TableCache& tables() {
  static TableCache cache;
  return cache;
}

const std::vector<std::int64_t>& sigma_upto(std::int64_t n) {
  auto& c = tables();
  std::lock_guard lock(c.mutex);
  if (static_cast<std::int64_t>(c.sigma.size()) <= n) c.sigma = sigma1_table(std::max<std::int64_t>(n, 2 * c.sigma.size()));
  return c.sigma;
}

const std::vector<std::int64_t>& twisted_upto(const DirichletCharacter& chi, std::int64_t n) {
  auto& c = tables();
  std::lock_guard lock(c.mutex);
  auto& t = c.twisted[chi.label()];
  if (static_cast<std::int64_t>(t.size()) <= (n + 1) * chi.order) {
    const std::int64_t have = static_cast<std::int64_t>(t.size()) / std::max(1, chi.order);
    t = twisted_table(chi, std::max<std::int64_t>(n, 2 * have));
  }
  return t;
}

Complex zeta_power(int order, int j) { return expi2pi(Real(j) / order); }

EisensteinDescriptor single(std::string label, std::vector<std::pair<Complex, EisensteinAtom>> terms) {
  return {std::move(label), std::move(terms)};
}

Complex one() { return Complex(Real(1), Real(0)); }

EisensteinAtom e2_atom(std::int64_t t) {
  EisensteinAtom a;
  a.kind = EisensteinAtom::Kind::e2;
  a.t = t;
  return a;
}

// Sum of coefficient * atom with equal atoms merged.
EisensteinDescriptor combine(const std::string& label, const std::vector<EisensteinDescriptor>& forms,
                             const std::vector<Complex>& coefficients) {
  EisensteinDescriptor out;
  out.label = label;
  std::map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (const auto& [c, atom] : forms[i].terms) {
      const auto key = atom.label();
      auto it = slot.find(key);
      if (it == slot.end()) {
        slot[key] = out.terms.size();
        out.terms.emplace_back(coefficients[i] * c, atom);
      } else {
        out.terms[it->second].first += coefficients[i] * c;
      }
    }
  return out;
}

struct Solved {
  CuspSet cusps;
  std::vector<EisensteinDescriptor> generators;
  std::vector<EisensteinDescriptor> indicators;
  Real condition_number;
  Real delta_residual;
};

Solved solve_indicators(std::int64_t level) {
  PrecisionScope scope(kCuspDigits);
  Solved s;
  s.cusps = enumerate_cusps(level);
  for (const auto& b : raw_basis(level, 1)) s.generators.push_back(b.descriptor);
  for (const auto& b : twisted_basis(level, 1)) s.generators.push_back(b.descriptor);
  const auto rows = static_cast<Eigen::Index>(s.cusps.cusps.size());
  const auto cols = static_cast<Eigen::Index>(s.generators.size());

  Matrix v(rows, cols);
  for (Eigen::Index j = 0; j < rows; ++j) {
    const auto values = cusp_constants(s.generators, s.cusps.cusps[static_cast<std::size_t>(j)], level);
    for (Eigen::Index i = 0; i < cols; ++i) v(j, i) = values[static_cast<std::size_t>(i)].value;
  }
  Eigen::JacobiSVD<Matrix> svd(v, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Real smallest = sv(std::min(rows, cols) - 1);
  s.condition_number = smallest == 0 ? Real(std::numeric_limits<double>::infinity()) : Real(sv(0) / smallest);
  if (s.condition_number > Real(1e15))
    throw Error("Eisenstein cusp-value system for level " + std::to_string(level) +
                " is singular (condition estimate " + to_decimal(s.condition_number, 6) + ")");
  const Matrix x = svd.solve(Matrix::Identity(rows, rows));

  for (Eigen::Index j = 0; j < rows; ++j) {
    std::vector<Complex> coefficients;
    for (Eigen::Index i = 0; i < cols; ++i) coefficients.push_back(x(i, j));
    s.indicators.push_back(
        combine("F^" + s.cusps.cusps[static_cast<std::size_t>(j)].label(), s.generators, coefficients));
  }

  // Fresh evaluation on a stretched ladder.
  s.delta_residual = 0;
  for (Eigen::Index j = 0; j < rows; ++j) {
    const auto values = cusp_constants(s.indicators, s.cusps.cusps[static_cast<std::size_t>(j)], level, 1.25);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const Complex expected = i == j ? one() : Complex(Real(0), Real(0));
      s.delta_residual = std::max(s.delta_residual, abs_c(values[static_cast<std::size_t>(i)].value - expected));
    }
  }
  if (s.delta_residual > Real(1e-10))
    throw Error("indicator basis for level " + std::to_string(level) + " fails the delta check (residual " +
                to_decimal(s.delta_residual, 6) + ")");
  return s;
}

const Solved& solved_indicators(std::int64_t level) {
  static std::mutex mutex;
  static std::map<std::int64_t, Solved> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(level);
  if (it == cache.end()) it = cache.emplace(level, solve_indicators(level)).first;
  return it->second;
}

}  // namespace

std::string Cusp::label() const {
  if (is_infinity()) return "oo";
  return std::to_string(a) + "/" + std::to_string(c);
}

std::int64_t cusp_count(std::int64_t level) {
  std::int64_t total = 0;
  for (std::int64_t d : divisors(level)) total += euler_phi(std::gcd(d, level / d));
  return total;
}

CuspSet enumerate_cusps(std::int64_t level) {
  if (level < 1) throw Error("level must be positive");
  CuspSet set;
  set.level = level;
  set.cusps.push_back(Cusp{1, 0, 1});
  for (std::int64_t d : divisors(level)) {
    if (d == level) continue;  // 1/N is equivalent to infinity
    const std::int64_t g = std::gcd(d, level / d);
    const std::int64_t width = level / std::gcd(d * d, level);
    for (std::int64_t x = 0; x < g; ++x) {
      if (std::gcd(x, g) != 1) continue;
      std::int64_t a = x == 0 ? g : x;
      if (d == 1) a = 0;
      while (std::gcd(a, d) != 1) a += g;
      set.cusps.push_back(Cusp{a, d, width});
    }
  }
  return set;
}

bool cusps_equivalent(const Cusp& x, const Cusp& y, std::int64_t level) {
  auto invariant = [level](const Cusp& p) {
    const std::int64_t c = p.is_infinity() ? level : p.c;
    const std::int64_t d = std::gcd(c, level);
    const std::int64_t g = std::gcd(d, level / d);
    return std::pair{d, mod(p.a * ((c / d) % g), g)};
  };
  return invariant(x) == invariant(y);
}

std::string DirichletCharacter::label() const {
  std::string s = "chi" + std::to_string(modulus) + "[";
  for (std::size_t i = 0; i < exponent.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(exponent[i]);
  }
  return s + "]/" + std::to_string(order);
}

std::vector<DirichletCharacter> primitive_characters(int f) {
  if (f < 1) throw Error("character modulus must be positive");
  if (f <= 2) return {};
  const std::int64_t phi = euler_phi(f);
  // Find a generator of (Z/f)^*; absent generators mean a non-cyclic group.
  std::int64_t gen = -1;
  for (std::int64_t g = 2; g < f && gen < 0; ++g) {
    if (std::gcd<std::int64_t>(g, f) != 1) continue;
    std::int64_t x = 1, ord = 0;
    do {
      x = x * g % f;
      ++ord;
    } while (x != 1);
    if (ord == phi) gen = g;
  }
  if (gen < 0) throw Error("characters modulo " + std::to_string(f) + " are not supported");
  std::vector<DirichletCharacter> out;
  for (std::int64_t j = 1; j < phi; ++j) {
    DirichletCharacter chi;
    chi.modulus = f;
    chi.order = static_cast<int>(phi);
    chi.exponent.assign(static_cast<std::size_t>(f), -1);
    std::int64_t x = 1;
    for (std::int64_t k = 0; k < phi; ++k) {
      chi.exponent[static_cast<std::size_t>(x)] = static_cast<int>(j * k % phi);
      x = x * gen % f;
    }
    // Primitive unless trivial on the units congruent to 1 modulo a proper divisor.
    bool primitive = true;
    for (std::int64_t d : divisors(f)) {
      if (d == f) continue;
      bool trivial = true;
      for (std::int64_t n = 1; n < f; n += d)
        if (std::gcd<std::int64_t>(n, f) == 1 && chi.exponent[static_cast<std::size_t>(n)] != 0) trivial = false;
      if (trivial) primitive = false;
    }
    if (primitive) out.push_back(std::move(chi));
  }
  return out;
}

std::string EisensteinAtom::label() const {
  const std::string arg = t == 1 ? "z" : std::to_string(t) + "z";
  if (kind == Kind::e2) return "E2(" + arg + ")";
  return "E[" + chi.label() + "](" + arg + ")";
}

QSeries<Complex> atom_series(const EisensteinAtom& atom, long n_max) {
  const long order = n_max + 1;
  std::vector<Complex> c(static_cast<std::size_t>(order), Complex(Real(0), Real(0)));
  if (atom.kind == EisensteinAtom::Kind::e2) {
    const auto& s = sigma_upto(n_max / atom.t + 1);
    c[0] = one();
    for (long n = 1; n * atom.t <= n_max; ++n)
      c[static_cast<std::size_t>(n * atom.t)] = Complex(Real(-24 * s[static_cast<std::size_t>(n)]), Real(0));
  } else {
    const int order_chi = atom.chi.order;
    const auto& b = twisted_upto(atom.chi, n_max / atom.t + 1);
    std::vector<Complex> zeta;
    for (int j = 0; j < order_chi; ++j) zeta.push_back(zeta_power(order_chi, j));
    for (long n = 1; n * atom.t <= n_max; ++n) {
      Complex v(Real(0), Real(0));
      for (int j = 0; j < order_chi; ++j) {
        const std::int64_t k = b[static_cast<std::size_t>(n * order_chi + j)];
        if (k != 0) v += times_int(zeta[static_cast<std::size_t>(j)], k);
      }
      c[static_cast<std::size_t>(n * atom.t)] = v;
    }
  }
  return QSeries<Complex>(0, std::move(c), order);
}

QSeries<Complex> descriptor_series(const EisensteinDescriptor& d, long n_max) {
  QSeries<Complex> out = QSeries<Complex>(0, {}, n_max + 1);
  for (const auto& [coef, atom] : d.terms) out = out + atom_series(atom, n_max).scaled(coef);
  return out;
}

std::vector<BasisElement> raw_basis(std::int64_t level, long n_max) {
  std::vector<BasisElement> out;
  EisensteinDescriptor e2 = single("E2(z)", {{one(), e2_atom(1)}});
  out.push_back({e2, descriptor_series(e2, n_max)});
  for (std::int64_t d : divisors(level)) {
    if (d == 1) continue;
    EisensteinDescriptor diff = single("E2(z)-" + std::to_string(d) + "E2(" + std::to_string(d) + "z)",
                                       {{one(), e2_atom(1)}, {Complex(Real(-d), Real(0)), e2_atom(d)}});
    out.push_back({diff, descriptor_series(diff, n_max)});
  }
  return out;
}

std::vector<BasisElement> twisted_basis(std::int64_t level, long n_max) {
  std::vector<BasisElement> out;
  for (std::int64_t f = 3; f * f <= level; ++f) {
    if (level % (f * f) != 0) continue;
    for (const auto& chi : primitive_characters(static_cast<int>(f))) {
      for (std::int64_t t : divisors(level / (f * f))) {
        EisensteinAtom atom;
        atom.kind = EisensteinAtom::Kind::twisted;
        atom.t = t;
        atom.chi = chi;
        EisensteinDescriptor d = single(atom.label(), {{one(), atom}});
        out.push_back({d, descriptor_series(d, n_max)});
      }
    }
  }
  return out;
}

std::vector<Complex> evaluate_completed(const std::vector<EisensteinDescriptor>& forms, const Complex& z) {
  const Real y = z.imag();
  if (y <= 0) throw Error("evaluation point must lie in the upper half-plane");
  // Collect distinct atoms.
  std::vector<EisensteinAtom> atoms;
  std::map<std::string, std::size_t> index;
  for (const auto& f : forms)
    for (const auto& term : f.terms)
      if (index.emplace(term.second.label(), atoms.size()).second) atoms.push_back(term.second);

  // Terms up to |q|^m m^2 < 10^-kSeriesDigits (coefficients grow at most like m^2).
  const double two_pi_y = 2 * M_PI * static_cast<double>(y);
  std::int64_t m_max = 16;
  while (m_max * two_pi_y - 2 * std::log(static_cast<double>(m_max)) < kSeriesDigits * std::log(10.0)) m_max *= 2;
  m_max = static_cast<std::int64_t>(std::ceil((kSeriesDigits * std::log(10.0) + 2 * std::log(static_cast<double>(m_max))) / two_pi_y)) + 1;

  const auto& sigma = sigma_upto(m_max);
  std::vector<const std::vector<std::int64_t>*> twisted(atoms.size(), nullptr);
  std::vector<std::vector<Complex>> acc(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const int buckets = atoms[i].kind == EisensteinAtom::Kind::e2 ? 1 : atoms[i].chi.order;
    acc[i].assign(static_cast<std::size_t>(buckets), Complex(Real(0), Real(0)));
    if (atoms[i].kind == EisensteinAtom::Kind::twisted) twisted[i] = &twisted_upto(atoms[i].chi, m_max);
  }

  const Complex q = expi2pi(z.real()) * exp(-2 * pi() * y);
  Complex qm = one();
  for (std::int64_t m = 1; m <= m_max; ++m) {
    qm *= q;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const auto& atom = atoms[i];
      if (m % atom.t != 0) continue;
      const std::int64_t n = m / atom.t;
      if (atom.kind == EisensteinAtom::Kind::e2) {
        acc[i][0] += times_int(qm, sigma[static_cast<std::size_t>(n)]);
      } else {
        const int order = atom.chi.order;
        for (int j = 0; j < order; ++j) {
          const std::int64_t k = (*twisted[i])[static_cast<std::size_t>(n * order + j)];
          if (k != 0) acc[i][static_cast<std::size_t>(j)] += times_int(qm, k);
        }
      }
    }
  }

  std::vector<Complex> atom_value(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto& atom = atoms[i];
    if (atom.kind == EisensteinAtom::Kind::e2) {
      atom_value[i] = one() - Real(24) * acc[i][0] - Complex(Real(3) / (pi() * atom.t * y), Real(0));
    } else {
      Complex v(Real(0), Real(0));
      for (int j = 0; j < atom.chi.order; ++j) v += acc[i][static_cast<std::size_t>(j)] * zeta_power(atom.chi.order, j);
      atom_value[i] = v;
    }
  }

  std::vector<Complex> out;
  for (const auto& f : forms) {
    Complex v(Real(0), Real(0));
    for (const auto& [coef, atom] : f.terms) v += coef * atom_value[index.at(atom.label())];
    out.push_back(v);
  }
  return out;
}

std::vector<CuspConstant> cusp_constants(const std::vector<EisensteinDescriptor>& forms, const Cusp& cusp,
                                         std::int64_t level, double ladder_scale) {
  std::int64_t a = 1, b = 0, c = 0, d = 1;
  if (!cusp.is_infinity()) {
    const auto [x, y] = bezout_unit(cusp.a, cusp.c);
    a = cusp.a;
    b = y;
    c = cusp.c;
    d = x;
  }
  const std::int64_t width = cusp.is_infinity() ? 1 : level / std::gcd(cusp.c * cusp.c, level);
  const double y1 = ladder_scale * (kLadderDigits * std::log(10.0) + std::log(100.0 * level)) * width / (2 * M_PI);
  const std::array<Real, 3> heights{Real(y1), Real(1.5 * y1), Real(2 * y1)};

  std::array<std::vector<Complex>, 3> g;
  for (std::size_t k = 0; k < 3; ++k) {
    const Complex z(Real(0), heights[k]);
    const Complex denom = Complex(Real(c), Real(0)) * z + Complex(Real(d), Real(0));
    const Complex w = (Complex(Real(a), Real(0)) * z + Complex(Real(b), Real(0))) / denom;
    const Complex factor = Real(1) / (denom * denom);
    g[k] = evaluate_completed(forms, w);
    for (auto& v : g[k]) v *= factor;
  }
  auto extrapolate = [&](std::size_t i, std::size_t lo, std::size_t hi) {
    return (heights[hi] * g[hi][i] - heights[lo] * g[lo][i]) / (heights[hi] - heights[lo]);
  };
  std::vector<CuspConstant> out;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    CuspConstant cc;
    cc.coarse = extrapolate(i, 0, 1);
    cc.value = extrapolate(i, 1, 2);
    cc.disagreement = abs_c(cc.value - cc.coarse);
    if (cc.disagreement > Real(1e-15))
      throw Error("cusp constant of " + forms[i].label + " at " + cusp.label() +
                  " did not settle (ladder disagreement " + to_decimal(cc.disagreement, 6) + ")");
    out.push_back(std::move(cc));
  }
  return out;
}

CuspConstant cusp_constant(const EisensteinDescriptor& form, const Cusp& cusp, std::int64_t level,
                           double ladder_scale) {
  PrecisionScope scope(std::max(kCuspDigits, working_digits()));
  return cusp_constants({form}, cusp, level, ladder_scale).front();
}

IndicatorBasis indicator_basis(std::int64_t level, long n_max) {
  const Solved& s = solved_indicators(level);
  IndicatorBasis out;
  out.level = level;
  out.cusps = s.cusps;
  out.condition_number = s.condition_number;
  out.delta_residual = s.delta_residual;
  for (std::size_t j = 0; j < s.indicators.size(); ++j)
    out.indicators.push_back({s.cusps.cusps[j], s.indicators[j], descriptor_series(s.indicators[j], n_max)});
  return out;
}

QSeries<Complex> infinity_indicator(std::int64_t level, long n_max) {
  const Solved& s = solved_indicators(level);
  return descriptor_series(s.indicators.front(), n_max);
}

}  // namespace shiftconv
