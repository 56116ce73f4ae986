#include "vaqw/examples.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace vaqw {

namespace {

Alphabet ab_alphabet() { return Alphabet({{"a", "a^-1"}, {"b", "b^-1"}}); }

TableRow row(const Alphabet& al, std::string_view g, std::size_t coset, std::size_t target, LatticeVector shift) {
  return {al.id(g), coset, target, std::move(shift)};
}

Complex expi(double x) { return std::polar(1.0, x); }

std::vector<double> four_band_phases(double theta, double phi, double second, int multiplicity) {
  std::vector<double> out;
  for (int r = 0; r < multiplicity; ++r) {
    for (double base : {theta, -theta}) {
      out.push_back(wrap_phase(base + phi));
      out.push_back(wrap_phase(base + phi + second));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double checked_arccos(double alpha, const char* who) {
  if (!(std::abs(alpha) <= 1.0 + 1e-12)) {
    throw std::domain_error(std::string(who) + ": |alpha| exceeds 1");
  }
  return std::acos(std::clamp(alpha, -1.0, 1.0));
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw std::invalid_argument("params: " + key + " expects a number, got '" + value + "'");
  }
  return out;
}

}  // namespace

std::string_view to_string(SolutionClass c) { return c == SolutionClass::I ? "I" : "II"; }

SolutionClass parse_solution_class(std::string_view s) {
  if (s == "I" || s == "1") return SolutionClass::I;
  if (s == "II" || s == "2") return SolutionClass::II;
  throw std::invalid_argument("unknown solution class '" + std::string(s) + "' (expected I or II)");
}

// ---- G1 -----------------------------------------------------------------

void G1Params::validate() const {
  if (!std::isfinite(n) || !std::isfinite(m) || n < 0.0 || m < 0.0) {
    throw std::invalid_argument("g1 params: n and m must be finite and non-negative");
  }
  if (std::abs(n * n + m * m - 1.0) > 1e-12) {
    throw std::invalid_argument("g1 params: n^2 + m^2 must equal 1");
  }
  if (sign != 1 && sign != -1) throw std::invalid_argument("g1 params: sign must be + or -");
}

G1Params parse_g1_params(std::string_view text) {
  G1Params p;
  bool have_n = false;
  bool have_m = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = trim(text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos));
    pos = comma == std::string_view::npos ? text.size() + 1 : comma + 1;
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("params: expected key=value, got '" + item + "'");
    const std::string key = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    if (key == "n") {
      p.n = parse_double(key, value);
      have_n = true;
    } else if (key == "m") {
      p.m = parse_double(key, value);
      have_m = true;
    } else if (key == "class") {
      p.solution = parse_solution_class(value);
    } else if (key == "sign") {
      if (value == "+" || value == "+1" || value == "1") {
        p.sign = 1;
      } else if (value == "-" || value == "-1") {
        p.sign = -1;
      } else {
        throw std::invalid_argument("params: sign must be + or -, got '" + value + "'");
      }
    } else {
      throw std::invalid_argument("params: unknown key '" + key + "'");
    }
  }
  if (have_n && !have_m) p.m = std::sqrt(std::max(0.0, 1.0 - p.n * p.n));
  if (have_m && !have_n) p.n = std::sqrt(std::max(0.0, 1.0 - p.m * p.m));
  p.validate();
  return p;
}

std::string format_g1_params(const G1Params& p) {
  const auto shortest = [](double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
  };
  return "n=" + shortest(p.n) + ",m=" + shortest(p.m) + ",class=" + std::string(to_string(p.solution)) +
         ",sign=" + (p.sign > 0 ? "+" : "-");
}

GroupPresentation g1_presentation() {
  const Alphabet al = ab_alphabet();
  return {al,
          {al.word({"a", "a", "a", "a"}), al.word({"b", "b", "b", "b"}), al.word({"a", "b", "a", "b"})}};
}

TilingData g1_tiling() {
  const Alphabet al = ab_alphabet();
  std::vector<TableRow> rows;
  for (std::size_t j = 0; j < 4; ++j) {
    rows.push_back(row(al, "a", j, (j + 3) % 4, {0, 0}));
    rows.push_back(row(al, "a^-1", j, (j + 1) % 4, {0, 0}));
  }
  rows.push_back(row(al, "b", 0, 3, {1, 0}));
  rows.push_back(row(al, "b", 1, 0, {0, 1}));
  rows.push_back(row(al, "b", 2, 1, {-1, 0}));
  rows.push_back(row(al, "b", 3, 2, {0, -1}));
  rows.push_back(row(al, "b^-1", 0, 1, {0, -1}));
  rows.push_back(row(al, "b^-1", 1, 2, {1, 0}));
  rows.push_back(row(al, "b^-1", 2, 3, {0, 1}));
  rows.push_back(row(al, "b^-1", 3, 0, {-1, 0}));
  std::vector<Word> reps{{}, al.word({"a"}), al.word({"a", "a"}), al.word({"a", "a", "a"})};
  std::vector<Word> basis{al.word({"a^-1", "b"}), al.word({"b", "a^-1"})};
  return TilingData(al, 2, std::move(reps), rows, std::move(basis));
}

TransitionFamily g1_canonical_transitions(const Alphabet& alphabet, SolutionClass solution, int sign) {
  const Complex zeta(0.5, 0.5 * sign);
  const ComplexMatrix p0{{zeta, 0.0}, {0.0, 0.0}};
  const ComplexMatrix p1{{0.0, 0.0}, {0.0, zeta}};
  const ComplexMatrix p0_dag = p0.adjoint();
  const ComplexMatrix p1_dag = p1.adjoint();
  if (solution == SolutionClass::I) {
    return TransitionFamily::from_named(alphabet, 2, {{"a", p0}, {"b", p1}, {"a^-1", p0_dag}, {"b^-1", p1_dag}});
  }
  return TransitionFamily::from_named(alphabet, 2, {{"a", p0}, {"b", p1}, {"a^-1", p1_dag}, {"b^-1", p0_dag}});
}

WalkSpec g1_walk(const G1Params& p) {
  p.validate();
  const GroupPresentation pres = g1_presentation();
  const TransitionFamily canonical = g1_canonical_transitions(pres.alphabet, p.solution, p.sign);
  const ComplexMatrix z = ComplexMatrix::identity(2) * Complex(p.n, 0.0) + pauli_x() * Complex(0.0, p.sign * p.m);
  std::vector<ComplexMatrix> mats;
  for (const auto& a : canonical.matrices()) mats.push_back(z * a);
  return WalkSpec(pres, g1_tiling(), TransitionFamily(pres.alphabet, 2, std::move(mats)));
}

IsotropySpec g1_isotropy(const Alphabet& alphabet) {
  return IsotropySpec::from_names(alphabet, {{"a", "b"}, {"b", "a"}}, pauli_x());
}

double g1_effective_nu(const G1Params& p) { return p.solution == SolutionClass::I ? p.m : p.n; }

double g1_mass(const G1Params& p) {
  const double nu = g1_effective_nu(p);
  return std::sqrt(std::max(0.0, 1.0 - nu * nu));
}

double g1_alpha(std::span<const double> k, double nu) {
  if (k.size() != 2) throw DimensionError("g1: wave vector must have 2 components");
  const double cx = std::cos(k[0] / 2.0);
  const double cy = std::cos(k[1] / 2.0);
  return nu * std::sqrt(0.5 * (cx * cx + cy * cy));
}

std::vector<double> g1_closed_form(std::span<const double> k, double nu) {
  const double theta = checked_arccos(g1_alpha(k, nu), "g1 closed form");
  return four_band_phases(theta, -kPi / 4.0, -kPi, 2);
}

std::vector<double> g1_dispersion_oracle(std::span<const double> k, const G1Params& p) {
  const double nu = g1_effective_nu(p);
  const double phi = p.solution == SolutionClass::I ? kPi / 2.0 : 0.0;
  const double theta = checked_arccos(g1_alpha(k, nu), "g1 oracle");
  return four_band_phases(theta, phi, -kPi, 2);
}

// ---- G2 -----------------------------------------------------------------

GroupPresentation g2_presentation() {
  const Alphabet al = ab_alphabet();
  return {al, {al.word({"a", "a", "b^-1", "b^-1"})}};
}

TilingData g2_tiling() {
  const Alphabet al = ab_alphabet();
  std::vector<TableRow> rows{
      row(al, "a", 0, 1, {0, 0}),     row(al, "a", 1, 0, {1, 0}),     row(al, "b", 0, 1, {0, 1}),
      row(al, "b", 1, 0, {1, -1}),    row(al, "a^-1", 0, 1, {-1, 0}), row(al, "a^-1", 1, 0, {0, 0}),
      row(al, "b^-1", 0, 1, {-1, 1}), row(al, "b^-1", 1, 0, {0, -1}),
  };
  std::vector<Word> reps{{}, al.word({"a^-1"})};
  std::vector<Word> basis{al.word({"a", "a"}), al.word({"a^-1", "b"})};
  return TilingData(al, 2, std::move(reps), rows, std::move(basis));
}

ComplexMatrix g2_y() {
  const double r = 1.0 / std::sqrt(2.0);
  return ComplexMatrix{{r, r}, {-r, r}};
}

TransitionFamily g2_transitions(const Alphabet& alphabet, SolutionClass solution) {
  const ComplexMatrix aa{{0.5, 0.0}, {0.5, 0.0}};
  const ComplexMatrix ab{{0.5, 0.0}, {-0.5, 0.0}};
  const ComplexMatrix aa_inv{{0.0, 0.5}, {0.0, 0.5}};
  const ComplexMatrix ab_inv{{0.0, -0.5}, {0.0, 0.5}};
  TransitionFamily one =
      TransitionFamily::from_named(alphabet, 2, {{"a", aa}, {"b", ab}, {"a^-1", aa_inv}, {"b^-1", ab_inv}});
  if (solution == SolutionClass::I) return one;
  const ComplexMatrix y = g2_y();
  const ComplexMatrix y_dag = y.adjoint();
  std::vector<ComplexMatrix> mats;
  for (const auto& m : one.matrices()) mats.push_back(y * m.transpose() * y_dag);
  return TransitionFamily(alphabet, 2, std::move(mats));
}

WalkSpec g2_walk(SolutionClass solution) {
  const GroupPresentation pres = g2_presentation();
  return WalkSpec(pres, g2_tiling(), g2_transitions(pres.alphabet, solution));
}

IsotropySpec g2_isotropy(const Alphabet& alphabet, SolutionClass solution) {
  ComplexMatrix u = pauli_z();
  if (solution == SolutionClass::II) u = g2_y() * u * g2_y().adjoint();
  return IsotropySpec::from_names(alphabet, {{"a", "b"}, {"b", "a"}}, std::move(u));
}

std::pair<double, double> g2_kxky(std::span<const double> k) {
  if (k.size() != 2) throw DimensionError("g2: wave vector must have 2 components");
  return {k[0] + k[1], k[0] - k[1]};
}

std::vector<double> g2_basis_from_kxky(double kx, double ky) { return {(kx + ky) / 2.0, (kx - ky) / 2.0}; }

double g2_alpha(std::span<const double> k) {
  const auto [kx, ky] = g2_kxky(k);
  return 0.5 * (std::sin(kx / 2.0) + std::sin(ky / 2.0));
}

std::vector<double> g2_closed_form(std::span<const double> k) {
  const double theta = checked_arccos(g2_alpha(k), "g2 closed form");
  return four_band_phases(theta, kPi / 2.0, kPi, 1);
}

ComplexMatrix g2_b_matrix(const WalkSpec& w, std::span<const double> k) {
  const auto [kx, ky] = g2_kxky(k);
  const Alphabet& al = w.alphabet();
  return w.matrix(al.id("a")) * expi(-kx / 2.0) + w.matrix(al.id("b")) * expi(-ky / 2.0) +
         w.matrix(al.id("a^-1")) * expi(ky / 2.0) + w.matrix(al.id("b^-1")) * expi(kx / 2.0);
}

ComplexMatrix g2_reduced_operator(const WalkSpec& w, std::span<const double> k, SolutionClass solution) {
  return kron(pauli_z(), g2_b_matrix(w, k) * g2_isotropy(w.alphabet(), solution).coin_unitary);
}

ComplexMatrix g2_factorized_operator(const WalkSpec& w, std::span<const double> k, SolutionClass solution) {
  const auto [kx, ky] = g2_kxky(k);
  const double r = 1.0 / std::sqrt(2.0);
  const ComplexMatrix hadamard{{r, r}, {r, -r}};
  const ComplexMatrix rr = kron(hadamard, ComplexMatrix::identity(2));
  ComplexMatrix v = ComplexMatrix::identity(4);
  v.set_block(2, 2, g2_isotropy(w.alphabet(), solution).coin_unitary * expi(ky / 2.0));
  return v * rr * g2_reduced_operator(w, k, solution) * rr.adjoint() * v.adjoint();
}

// ---- helpers --------------------------------------------------------------

WalkSpec scalar_walk(const GroupPresentation& p, const TilingData& t, const std::vector<Complex>& values) {
  std::vector<ComplexMatrix> mats;
  mats.reserve(values.size());
  for (Complex v : values) mats.push_back(ComplexMatrix{{v}});
  return WalkSpec(p, t, TransitionFamily(p.alphabet, 1, std::move(mats)));
}

WalkSpec perturb_entry(const WalkSpec& w, GeneratorId g, std::size_t row_index, std::size_t col, Complex eps) {
  TransitionFamily t = w.transitions();
  ComplexMatrix& m = t[g];
  if (row_index >= m.rows() || col >= m.cols()) throw DimensionError("perturb_entry: index out of range");
  m(row_index, col) += eps;
  return w.with_transitions(std::move(t));
}

// ---- verification suite ---------------------------------------------------

bool AppendixReport::all_passed() const {
  return std::all_of(items.begin(), items.end(), [](const SuiteItem& i) { return i.passed; });
}

const SuiteItem* AppendixReport::find(std::string_view id) const {
  for (const auto& i : items) {
    if (i.id == id) return &i;
  }
  return nullptr;
}

std::string AppendixReport::summary() const {
  std::ostringstream os;
  for (const auto& i : items) {
    os << (i.passed ? "PASS " : "FAIL ") << '(' << i.id << ") " << i.description << ": " << i.detail << '\n';
  }
  return os.str();
}

namespace {

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

std::vector<std::pair<double, double>> nm_sweep(std::size_t samples) {
  std::vector<std::pair<double, double>> out;
  const std::size_t count = std::max<std::size_t>(samples, 2);
  for (std::size_t i = 0; i < count; ++i) {
    const double n = static_cast<double>(i) / static_cast<double>(count - 1);
    out.emplace_back(n, std::sqrt(std::max(0.0, 1.0 - n * n)));
  }
  return out;
}

struct WalkChecks {
  double unitarity = 0.0;
  double isotropy = 0.0;
  double normalization = 0.0;
};

WalkChecks check_walk(const WalkSpec& w, const IsotropySpec& iso) {
  return {unitarity_residual(w).residual, check_isotropy(w, iso), isotropy_normalization_residual(w)};
}

SuiteItem item_canonical(const SuiteConfig& cfg) {
  SuiteItem item{"i", "canonical G1 classes are unitary, normalized and sigma_x-isotropic", true, {}};
  const GroupPresentation pres = g1_presentation();
  const TilingData tiling = g1_tiling();
  const IsotropySpec iso = g1_isotropy(pres.alphabet);
  WalkChecks worst;
  for (auto cls : {SolutionClass::I, SolutionClass::II}) {
    for (int sign : {1, -1}) {
      const WalkSpec w(pres, tiling, g1_canonical_transitions(pres.alphabet, cls, sign));
      const WalkChecks c = check_walk(w, iso);
      worst.unitarity = std::max(worst.unitarity, c.unitarity);
      worst.isotropy = std::max(worst.isotropy, c.isotropy);
      worst.normalization = std::max(worst.normalization, c.normalization);
    }
  }
  item.passed = worst.unitarity < cfg.tolerance && worst.isotropy < cfg.tolerance && worst.normalization < cfg.tolerance;
  item.detail = "unitarity " + sci(worst.unitarity) + ", isotropy " + sci(worst.isotropy) + ", normalization " +
                sci(worst.normalization);
  return item;
}

SuiteItem item_left_multiplied(const SuiteConfig& cfg) {
  SuiteItem item{"ii", "Z-left-multiplied G1 family stays unitary and isotropic", true, {}};
  double worst_u = 0.0;
  double worst_iso = 0.0;
  std::size_t members = 0;
  const IsotropySpec iso = g1_isotropy(g1_presentation().alphabet);
  for (auto [n, m] : nm_sweep(cfg.parameter_samples)) {
    for (auto cls : {SolutionClass::I, SolutionClass::II}) {
      for (int sign : {1, -1}) {
        const WalkSpec w = g1_walk({cls, n, m, sign});
        worst_u = std::max(worst_u, unitarity_residual(w).residual);
        worst_iso = std::max(worst_iso, check_isotropy(w, iso));
        ++members;
      }
    }
  }
  item.passed = worst_u < cfg.tolerance && worst_iso < cfg.tolerance;
  item.detail = std::to_string(members) + " members, unitarity " + sci(worst_u) + ", isotropy " + sci(worst_iso);
  return item;
}

SuiteItem item_g2(const SuiteConfig& cfg) {
  SuiteItem item{"iii", "G2 solutions are unitary, normalized, isotropic and related by Y (.)^T Y^dagger", true, {}};
  const WalkSpec one = cfg.g2_solution_one ? *cfg.g2_solution_one : g2_walk(SolutionClass::I);
  const WalkSpec two = cfg.g2_solution_two ? *cfg.g2_solution_two : g2_walk(SolutionClass::II);
  const WalkChecks c1 = check_walk(one, g2_isotropy(one.alphabet(), SolutionClass::I));
  const WalkChecks c2 = check_walk(two, g2_isotropy(two.alphabet(), SolutionClass::II));
  const ComplexMatrix y = g2_y();
  double relation = 0.0;
  for (auto g : one.alphabet().all()) {
    const ComplexMatrix expected = y * one.matrix(g).transpose() * y.adjoint();
    relation = std::max(relation, (two.matrix(g) - expected).max_abs());
  }
  const double worst = std::max({c1.unitarity, c1.isotropy, c1.normalization, c2.unitarity, c2.isotropy,
                                 c2.normalization, relation});
  item.passed = worst < cfg.tolerance;
  item.detail = "I: unitarity " + sci(c1.unitarity) + " isotropy " + sci(c1.isotropy) + " normalization " +
                sci(c1.normalization) + "; II: unitarity " + sci(c2.unitarity) + " isotropy " + sci(c2.isotropy) +
                " normalization " + sci(c2.normalization) + "; relation " + sci(relation);
  return item;
}

SuiteItem item_scalar(const SuiteConfig& cfg) {
  SuiteItem item{"iv", "no coin-dimension-1 walk on G1 or G2 is unitary", true, {}};
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> modulus(0.1, 1.0);
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  std::size_t rejected = 0;
  std::size_t total = 0;
  double min_residual = std::numeric_limits<double>::infinity();
  for (const auto& [pres, tiling] : {std::pair{g1_presentation(), g1_tiling()}, std::pair{g2_presentation(), g2_tiling()}}) {
    for (std::size_t s = 0; s < cfg.scalar_samples; ++s) {
      std::vector<Complex> values;
      for (std::size_t g = 0; g < pres.alphabet.size(); ++g) {
        const double r = modulus(rng);
        values.push_back(std::polar(r, phase(rng)));
      }
      const double res = unitarity_residual(scalar_walk(pres, tiling, values)).residual;
      min_residual = std::min(min_residual, res);
      ++total;
      if (res >= cfg.infeasibility_floor) ++rejected;
    }
  }
  item.passed = rejected == total;
  item.detail = std::to_string(rejected) + "/" + std::to_string(total) + " rejected, min residual " + sci(min_residual);
  return item;
}

SuiteItem item_classes(const SuiteConfig& cfg) {
  SuiteItem item{"v", "G1 classes differ in how inverse letters are assigned", true, {}};
  const Alphabet al = g1_presentation().alphabet;
  const auto a = al.id("a");
  const auto b = al.id("b");
  const auto ai = al.id("a^-1");
  const auto bi = al.id("b^-1");
  double class_one = 0.0;
  double class_two = 0.0;
  double separation = std::numeric_limits<double>::infinity();
  for (int sign : {1, -1}) {
    const auto t1 = g1_canonical_transitions(al, SolutionClass::I, sign);
    const auto t2 = g1_canonical_transitions(al, SolutionClass::II, sign);
    class_one = std::max({class_one, (t1[ai] - t1[a].adjoint()).max_abs(), (t1[bi] - t1[b].adjoint()).max_abs()});
    class_two = std::max({class_two, (t2[ai] - t2[b].adjoint()).max_abs(), (t2[bi] - t2[a].adjoint()).max_abs()});
    separation = std::min(separation, (t1[ai] - t2[ai]).max_abs());
  }
  item.passed = class_one < cfg.tolerance && class_two < cfg.tolerance && separation > 0.1;
  item.detail = "class I " + sci(class_one) + ", class II " + sci(class_two) + ", separation " + sci(separation);
  return item;
}

}  // namespace

AppendixReport appendix_verification_suite(const SuiteConfig& config) {
  AppendixReport r;
  r.items.push_back(item_canonical(config));
  r.items.push_back(item_left_multiplied(config));
  r.items.push_back(item_g2(config));
  r.items.push_back(item_scalar(config));
  r.items.push_back(item_classes(config));
  return r;
}

}  // namespace vaqw
