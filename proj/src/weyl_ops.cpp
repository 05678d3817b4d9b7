#include "tautgen/weyl_ops.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tautgen {

long total_degree(const Exponent& e) {
  long s = 0;
  for (int x : e) s += x;
  return s;
}

bool GradedLexLess::operator()(const Exponent& x, const Exponent& y) const {
  long dx = total_degree(x), dy = total_degree(y);
  if (dx != dy) return dx < dy;
  return x < y;
}

bool operator==(const OpKey& x, const OpKey& y) { return x.a == y.a && x.d == y.d; }

bool OpKeyLess::operator()(const OpKey& x, const OpKey& y) const {
  long dx = total_degree(x.a) + total_degree(x.d);
  long dy = total_degree(y.a) + total_degree(y.d);
  if (dx != dy) return dx < dy;
  if (x.a != y.a) return x.a < y.a;
  return x.d < y.d;
}

DiffOp DiffOp::constant(std::size_t n, const BigRational& c) {
  DiffOp op(n);
  op.add_term(c, Exponent(n, 0), Exponent(n, 0));
  return op;
}

DiffOp DiffOp::coordinate(std::size_t n, std::size_t i) {
  Exponent u(n, 0);
  u.at(i) = 1;
  return monomial(n, 1, u, Exponent(n, 0));
}

DiffOp DiffOp::partial(std::size_t n, std::size_t i) {
  Exponent v(n, 0);
  v.at(i) = 1;
  return monomial(n, 1, Exponent(n, 0), v);
}

DiffOp DiffOp::monomial(std::size_t n, const BigRational& c, Exponent a, Exponent d) {
  DiffOp op(n);
  op.add_term(c, a, d);
  return op;
}

void DiffOp::add_term(const BigRational& c, const Exponent& u, const Exponent& v) {
  if (u.size() != n_ || v.size() != n_) throw InputError("operator term has wrong variable count");
  for (std::size_t i = 0; i < n_; ++i)
    if (u[i] < 0 || v[i] < 0) throw InputError("operator exponents must be nonnegative");
  if (c == 0) return;
  OpKey key{u, v};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

int DiffOp::order() const {
  int best = 0;
  for (const auto& [key, c] : terms_) best = std::max<int>(best, static_cast<int>(total_degree(key.d)));
  return best;
}

bool DiffOp::has_constant_coefficients() const {
  for (const auto& [key, c] : terms_)
    if (total_degree(key.a) != 0) return false;
  return true;
}

long DiffOp::grading_drop(const std::vector<int>& weights) const {
  bool first = true;
  long best = 0;
  for (const auto& [key, c] : terms_) {
    long drop = 0;
    for (std::size_t i = 0; i < n_; ++i) drop += static_cast<long>(weights[i]) * (key.d[i] - key.a[i]);
    if (first || drop > best) best = drop;
    first = false;
  }
  return best;
}

DiffOp& DiffOp::operator+=(const DiffOp& other) {
  if (other.n_ != n_) throw InputError("operator variable-count mismatch");
  for (const auto& [key, c] : other.terms_) add_term(c, key.a, key.d);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& other) {
  if (other.n_ != n_) throw InputError("operator variable-count mismatch");
  for (const auto& [key, c] : other.terms_) add_term(-c, key.a, key.d);
  return *this;
}

DiffOp operator*(const BigRational& c, const DiffOp& x) {
  DiffOp out(x.n_);
  for (const auto& [key, v] : x.terms_) out.add_term(c * v, key.a, key.d);
  return out;
}

namespace {

void append_factor(std::ostringstream& os, bool& first, char name, std::size_t index, int power) {
  if (power == 0) return;
  if (!first) os << '*';
  first = false;
  os << name << index;
  if (power != 1) os << '^' << power;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Split on the binary separators " + " and " - " (the latter negates the next term).
std::vector<std::string> split_terms(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i + 2 < text.size() && text[i] == ' ' && (text[i + 1] == '+' || text[i + 1] == '-') &&
        text[i + 2] == ' ') {
      out.push_back(current);
      current = text[i + 1] == '-' ? "-1*" : "";
      i += 2;
      continue;
    }
    current.push_back(text[i]);
  }
  out.push_back(current);
  return out;
}

}  // namespace

std::string DiffOp::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first_term = true;
  for (const auto& [key, c] : terms_) {
    if (!first_term) os << " + ";
    first_term = false;
    os << tautgen::to_string(c);
    if (total_degree(key.a) + total_degree(key.d) == 0) continue;
    os << " * ";
    bool first = true;
    for (std::size_t i = 0; i < n_; ++i) append_factor(os, first, 'a', i, key.a[i]);
    for (std::size_t i = 0; i < n_; ++i) append_factor(os, first, 'd', i, key.d[i]);
  }
  return os.str();
}

DiffOp DiffOp::parse(const std::string& text, std::size_t n) {
  DiffOp result(n);
  std::string body = trim(text);
  if (body.empty()) throw InputError("empty operator text");
  for (const std::string& raw : split_terms(body)) {
    std::string term = trim(raw);
    if (term.empty()) throw InputError("empty term in operator '" + text + "'");
    DiffOp product = DiffOp::constant(n, 1);
    BigRational coeff = 1;
    std::stringstream ss(term);
    std::string token;
    while (std::getline(ss, token, '*')) {
      token = trim(token);
      if (token.empty()) throw InputError("dangling '*' in operator '" + text + "'");
      char head = token[0];
      if (head == 'a' || head == 'd') {
        std::size_t caret = token.find('^');
        std::string idx = token.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
        if (idx.empty() || !std::all_of(idx.begin(), idx.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
          throw InputError("bad variable '" + token + "'");
        std::size_t i = std::stoul(idx);
        if (i >= n) throw InputError("variable index out of range in '" + token + "'");
        int power = 1;
        if (caret != std::string::npos) {
          std::string p = token.substr(caret + 1);
          if (p.empty() || !std::all_of(p.begin(), p.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
            throw InputError("bad exponent in '" + token + "'");
          power = std::stoi(p);
        }
        DiffOp factor = head == 'a' ? DiffOp::coordinate(n, i) : DiffOp::partial(n, i);
        for (int k = 0; k < power; ++k) product = op_compose(product, factor);
      } else {
        coeff *= parse_rational(token);
      }
    }
    result += coeff * product;
  }
  return result;
}

namespace {

// d_i^p a_i^q = sum_k C(p,k) q!/(q-k)! a_i^{q-k} d_i^{p-k}, as (coefficient, q-k, p-k).
struct Reorder {
  BigInt coeff;
  int a_pow;
  int d_pow;
};

std::vector<Reorder> reorder_single(int p, int q) {
  std::vector<Reorder> out;
  BigInt falling = 1;  // q (q-1) ... (q-k+1)
  for (int k = 0; k <= std::min(p, q); ++k) {
    if (k > 0) falling *= (q - k + 1);
    out.push_back({binomial(p, k) * falling, q - k, p - k});
  }
  return out;
}

}  // namespace

DiffOp op_compose(const DiffOp& d1, const DiffOp& d2) {
  if (d1.variable_count() != d2.variable_count()) throw InputError("op_compose: variable-count mismatch");
  const std::size_t n = d1.variable_count();
  DiffOp out(n);
  for (const auto& [k1, c1] : d1.terms()) {
    for (const auto& [k2, c2] : d2.terms()) {
      // a^u1 (d^v1 a^u2) d^v2, reordered variable by variable.
      std::vector<std::pair<Exponent, Exponent>> partial_keys{{k1.a, Exponent(n, 0)}};
      std::vector<BigInt> partial_coeffs{1};
      for (std::size_t i = 0; i < n; ++i) {
        auto expansion = reorder_single(k1.d[i], k2.a[i]);
        if (expansion.size() == 1 && expansion[0].coeff == 1) {
          for (auto& [a, d] : partial_keys) {
            a[i] += expansion[0].a_pow;
            d[i] += expansion[0].d_pow;
          }
          continue;
        }
        std::vector<std::pair<Exponent, Exponent>> next_keys;
        std::vector<BigInt> next_coeffs;
        for (std::size_t t = 0; t < partial_keys.size(); ++t)
          for (const auto& r : expansion) {
            auto key = partial_keys[t];
            key.first[i] += r.a_pow;
            key.second[i] += r.d_pow;
            next_keys.push_back(std::move(key));
            next_coeffs.push_back(partial_coeffs[t] * r.coeff);
          }
        partial_keys = std::move(next_keys);
        partial_coeffs = std::move(next_coeffs);
      }
      BigRational c = c1 * c2;
      for (std::size_t t = 0; t < partial_keys.size(); ++t) {
        Exponent d = partial_keys[t].second;
        for (std::size_t i = 0; i < n; ++i) d[i] += k2.d[i];
        out.add_term(c * BigRational(partial_coeffs[t]), partial_keys[t].first, d);
      }
    }
  }
  return out;
}

DiffOp linear_vector_field(const RationalMatrix& x, const BigRational& shift) {
  if (x.rows() != x.cols()) throw InputError("symmetry matrix must be square");
  const std::size_t n = x.rows();
  DiffOp op(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      if (x(j, i) == 0) continue;
      Exponent u(n, 0), v(n, 0);
      u[j] = 1;
      v[i] = 1;
      op.add_term(x(j, i), u, v);
    }
  op.add_term(shift, Exponent(n, 0), Exponent(n, 0));
  return op;
}

DiffOp constant_coefficient_op(std::size_t n, const std::map<Exponent, BigRational, GradedLexLess>& symbol) {
  DiffOp op(n);
  for (const auto& [e, c] : symbol) op.add_term(c, Exponent(n, 0), e);
  return op;
}

BigRational evaluate_symbol(const DiffOp& op, const std::vector<BigRational>& point) {
  if (point.size() != op.variable_count()) throw InputError("evaluate_symbol: point has wrong length");
  if (!op.has_constant_coefficients()) throw InputError("evaluate_symbol: operator has non-constant coefficients");
  BigRational total = 0;
  for (const auto& [key, c] : op.terms()) {
    BigRational term = c;
    for (std::size_t i = 0; i < point.size() && term != 0; ++i)
      for (int k = 0; k < key.d[i]; ++k) term *= point[i];
    total += term;
  }
  return total;
}

FormalSeries::FormalSeries(std::size_t n, std::vector<int> weights, std::optional<long> order)
    : n_(n), weights_(std::move(weights)), order_(order) {
  if (weights_.size() != n_) throw InputError("grading weights length must equal variable count");
}

FormalSeries FormalSeries::polynomial(std::size_t n) { return FormalSeries(n, std::vector<int>(n, 1), std::nullopt); }

long FormalSeries::grading(const Exponent& e) const {
  long g = 0;
  for (std::size_t i = 0; i < n_; ++i) g += static_cast<long>(weights_[i]) * e[i];
  return g;
}

bool FormalSeries::in_range(const Exponent& e) const { return !order_ || grading(e) <= *order_; }

void FormalSeries::add(const Exponent& e, const BigRational& c) {
  if (e.size() != n_) throw InputError("series exponent has wrong length");
  if (c == 0 || !in_range(e)) return;
  auto it = coeffs_.find(e);
  if (it == coeffs_.end()) {
    coeffs_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) coeffs_.erase(it);
}

BigRational FormalSeries::coefficient(const Exponent& e) const {
  auto it = coeffs_.find(e);
  return it == coeffs_.end() ? BigRational(0) : it->second;
}

FormalSeries& FormalSeries::operator+=(const FormalSeries& other) {
  if (other.n_ != n_) throw InputError("series variable-count mismatch");
  if (other.order_ && (!order_ || *other.order_ < *order_)) *this = truncated(other.order_);
  for (const auto& [e, c] : other.coeffs_) add(e, c);
  return *this;
}

FormalSeries& FormalSeries::operator-=(const FormalSeries& other) { return *this += other.scaled(-1); }

FormalSeries FormalSeries::scaled(const BigRational& c) const {
  FormalSeries out(n_, weights_, order_);
  if (c == 0) return out;
  for (const auto& [e, v] : coeffs_) out.coeffs_.emplace(e, v * c);
  return out;
}

FormalSeries FormalSeries::truncated(std::optional<long> order) const {
  std::optional<long> target = order_;
  if (order && (!target || *order < *target)) target = order;
  FormalSeries out(n_, weights_, target);
  for (const auto& [e, c] : coeffs_) out.add(e, c);
  return out;
}

FormalSeries series_product(const FormalSeries& x, const FormalSeries& y) {
  if (x.variable_count() != y.variable_count() || x.grading_weights() != y.grading_weights())
    throw InputError("series_product: incompatible series");
  if (x.truncation_order() || y.truncation_order())
    throw InputError("series_product: only exact series are supported");
  FormalSeries out(x.variable_count(), x.grading_weights(), std::nullopt);
  for (const auto& [ex, cx] : x.coefficients())
    for (const auto& [ey, cy] : y.coefficients()) {
      Exponent e = ex;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += ey[i];
      out.add(e, cx * cy);
    }
  return out;
}

FormalSeries op_apply(const DiffOp& d, const FormalSeries& s) {
  if (d.variable_count() != s.variable_count()) throw InputError("op_apply: variable-count mismatch");
  const std::size_t n = s.variable_count();
  std::optional<long> order = s.truncation_order();
  if (order && !d.is_zero()) order = *order - d.grading_drop(s.grading_weights());
  FormalSeries out(n, s.grading_weights(), order);
  for (const auto& [key, c] : d.terms()) {
    for (const auto& [e, q] : s.coefficients()) {
      BigInt factor = 1;
      for (std::size_t i = 0; i < n && factor != 0; ++i)
        for (int k = 0; k < key.d[i]; ++k) factor *= (e[i] - k);
      if (factor == 0) continue;
      Exponent target = e;
      for (std::size_t i = 0; i < n; ++i) target[i] += key.a[i] - key.d[i];
      out.add(target, c * q * BigRational(factor));
    }
  }
  return out;
}

AnnihilationReport annihilates(const DiffOp& d, const FormalSeries& s, std::size_t index) {
  AnnihilationReport report;
  report.operator_index = index;
  report.residual = op_apply(d, s);
  report.certified_order = report.residual.truncation_order();
  report.passed = report.residual.empty();
  return report;
}

}  // namespace tautgen
