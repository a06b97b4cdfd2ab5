#include "koszulkit/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <sstream>

namespace koszulkit {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::one(int nvars) {
  if (nvars < 0 || nvars > kMaxVars) throw std::invalid_argument("too many variables");
  Monomial m;
  m.n = static_cast<std::uint8_t>(nvars);
  return m;
}

Monomial Monomial::var(int nvars, int i, int power) {
  Monomial m = one(nvars);
  m.set(i, power);
  return m;
}

void Monomial::set(int i, int v) {
  if (v < 0 || v > 255) throw std::overflow_error("exponent out of range");
  deg = static_cast<std::uint16_t>(deg - e[i] + v);
  e[i] = static_cast<std::uint8_t>(v);
}

bool Monomial::divides(const Monomial& m) const {
  if (deg > m.deg) return false;
  for (int i = 0; i < n; ++i)
    if (e[i] > m.e[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& m) const {
  Monomial r = *this;
  for (int i = 0; i < n; ++i) {
    int s = e[i] + m.e[i];
    if (s > 255) throw std::overflow_error("exponent overflow");
    r.e[i] = static_cast<std::uint8_t>(s);
  }
  r.deg = static_cast<std::uint16_t>(deg + m.deg);
  return r;
}

Monomial Monomial::operator/(const Monomial& d) const {
  Monomial r = *this;
  for (int i = 0; i < n; ++i) r.e[i] = static_cast<std::uint8_t>(e[i] - d.e[i]);
  r.deg = static_cast<std::uint16_t>(deg - d.deg);
  return r;
}

Monomial Monomial::lcm(const Monomial& m) const {
  Monomial r = one(n);
  for (int i = 0; i < n; ++i) {
    r.e[i] = std::max(e[i], m.e[i]);
    r.deg = static_cast<std::uint16_t>(r.deg + r.e[i]);
  }
  return r;
}

Monomial Monomial::gcd(const Monomial& m) const {
  Monomial r = one(n);
  for (int i = 0; i < n; ++i) {
    r.e[i] = std::min(e[i], m.e[i]);
    r.deg = static_cast<std::uint16_t>(r.deg + r.e[i]);
  }
  return r;
}

bool Monomial::coprime(const Monomial& m) const {
  for (int i = 0; i < n; ++i)
    if (e[i] && m.e[i]) return false;
  return true;
}

std::uint64_t Monomial::divmask() const {
  std::uint64_t r = 0;
  for (int i = 0; i < n; ++i)
    if (e[i]) r |= (std::uint64_t(1) << i);
  return r;
}

bool Monomial::operator==(const Monomial& m) const {
  return n == m.n && deg == m.deg && std::memcmp(e.data(), m.e.data(), n) == 0;
}

std::size_t Monomial::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (int i = 0; i < n; ++i) {
    h ^= e[i];
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

// ----------------------------------------------------------- MonomialOrder

namespace {

std::vector<int> iota_perm(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

// degrevlex restricted to perm[lo, hi)
int grevlex_range(const Monomial& a, const Monomial& b, const std::vector<int>& perm, int lo,
                  int hi) {
  int da = 0, db = 0;
  for (int k = lo; k < hi; ++k) {
    da += a.e[perm[k]];
    db += b.e[perm[k]];
  }
  if (da != db) return da > db ? 1 : -1;
  for (int k = hi - 1; k >= lo; --k) {
    int x = a.e[perm[k]], y = b.e[perm[k]];
    if (x != y) return x < y ? 1 : -1;
  }
  return 0;
}

}  // namespace

MonomialOrder MonomialOrder::degrevlex(int n) { return degrevlex(iota_perm(n)); }
MonomialOrder MonomialOrder::degrevlex(std::vector<int> perm) {
  MonomialOrder o;
  o.kind = OrderKind::Degrevlex;
  o.perm = std::move(perm);
  return o;
}
MonomialOrder MonomialOrder::deglex(int n) { return deglex(iota_perm(n)); }
MonomialOrder MonomialOrder::deglex(std::vector<int> perm) {
  MonomialOrder o;
  o.kind = OrderKind::Deglex;
  o.perm = std::move(perm);
  return o;
}
MonomialOrder MonomialOrder::elimination(std::vector<int> perm, int block) {
  MonomialOrder o;
  o.kind = OrderKind::Block;
  o.perm = std::move(perm);
  o.block = block;
  return o;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  const int n = static_cast<int>(perm.size());
  switch (kind) {
    case OrderKind::Degrevlex:
      if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
      for (int k = n - 1; k >= 0; --k) {
        int x = a.e[perm[k]], y = b.e[perm[k]];
        if (x != y) return x < y ? 1 : -1;
      }
      return 0;
    case OrderKind::Deglex:
      if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
      for (int k = 0; k < n; ++k) {
        int x = a.e[perm[k]], y = b.e[perm[k]];
        if (x != y) return x > y ? 1 : -1;
      }
      return 0;
    case OrderKind::Block: {
      int c = grevlex_range(a, b, perm, 0, block);
      if (c) return c;
      return grevlex_range(a, b, perm, block, n);
    }
  }
  return 0;
}

std::string MonomialOrder::name() const {
  switch (kind) {
    case OrderKind::Degrevlex: return "degrevlex";
    case OrderKind::Deglex: return "deglex";
    case OrderKind::Block: return "elim(" + std::to_string(block) + ")";
  }
  return "?";
}

// -------------------------------------------------------------------- Ring

int Ring::index_of(std::string_view name) const {
  for (int i = 0; i < nvars(); ++i)
    if (names[i] == name) return i;
  return -1;
}

std::string Ring::declaration() const {
  std::string s = "ring " + field.name() + " [";
  for (int i = 0; i < nvars(); ++i) {
    if (i) s += ", ";
    s += names[i];
    if (bigraded())
      s += ":(" + std::to_string(bidegrees[i][0]) + "," + std::to_string(bidegrees[i][1]) + ")";
  }
  return s + "]";
}

RingPtr make_ring(const Field& f, std::vector<std::string> names, std::vector<Bidegree> bidegrees) {
  if (names.empty()) throw std::invalid_argument("ring needs at least one variable");
  if (static_cast<int>(names.size()) > kMaxVars)
    throw std::invalid_argument("at most " + std::to_string(kMaxVars) + " variables");
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (names[i] == names[j]) throw std::invalid_argument("duplicate variable " + names[i]);
  if (!bidegrees.empty()) {
    if (bidegrees.size() != names.size()) throw std::invalid_argument("bidegree count mismatch");
    for (auto& b : bidegrees)
      if (b[0] < 0 || b[1] < 0 || b[0] + b[1] != 1)
        throw std::invalid_argument("variable bidegrees must be (1,0) or (0,1)");
  }
  auto r = std::make_shared<Ring>();
  r->field = f;
  r->names = std::move(names);
  r->bidegrees = std::move(bidegrees);
  return r;
}

RingPtr with_field(const RingPtr& r, const Field& f) { return make_ring(f, r->names, r->bidegrees); }

RingPtr extend_ring(const RingPtr& r, const std::vector<std::string>& extra, bool front) {
  std::vector<std::string> names;
  std::vector<Bidegree> bd;
  if (front) names = extra;
  names.insert(names.end(), r->names.begin(), r->names.end());
  if (!front) names.insert(names.end(), extra.begin(), extra.end());
  if (r->bigraded()) {
    std::vector<Bidegree> ex(extra.size(), Bidegree{1, 0});
    if (front) bd = ex;
    bd.insert(bd.end(), r->bidegrees.begin(), r->bidegrees.end());
    if (!front) bd.insert(bd.end(), ex.begin(), ex.end());
  }
  return make_ring(r->field, std::move(names), std::move(bd));
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || (a && b && *a == *b); }

namespace {

struct Cursor {
  std::string_view s;
  std::size_t i = 0;
  int line = 1, col0 = 1;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip();
    return i >= s.size();
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line, col0 + static_cast<int>(i));
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++i;
  }
  bool accept(char c) {
    if (peek() == c) {
      ++i;
      return true;
    }
    return false;
  }
  std::string ident() {
    skip();
    std::size_t j = i;
    if (j >= s.size() || !(std::isalpha(static_cast<unsigned char>(s[j])) || s[j] == '_'))
      fail("expected identifier");
    while (j < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
      ++j;
    std::string r(s.substr(i, j - i));
    i = j;
    return r;
  }
  std::string digits() {
    skip();
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) fail("expected number");
    std::string r(s.substr(i, j - i));
    i = j;
    return r;
  }
  int small_int() {
    bool neg = accept('-');
    std::string d = digits();
    if (d.size() > 6) fail("integer too large");
    int v = std::stoi(d);
    return neg ? -v : v;
  }
};

}  // namespace

RingPtr parse_ring(std::string_view decl, int line) {
  Cursor c{decl, 0, line, 1};
  if (c.ident() != "ring") c.fail("expected 'ring'");
  c.skip();
  std::size_t j = c.i;
  while (j < decl.size() && !std::isspace(static_cast<unsigned char>(decl[j])) && decl[j] != '[') ++j;
  std::string fname(decl.substr(c.i, j - c.i));
  Field f;
  try {
    f = Field::parse(fname);
  } catch (const FieldError& e) {
    c.fail(e.what());
  }
  c.i = j;
  c.expect('[');
  std::vector<std::string> names;
  std::vector<Bidegree> bd;
  bool any_bd = false, all_bd = true;
  while (true) {
    names.push_back(c.ident());
    if (c.accept(':')) {
      c.expect('(');
      int a = c.small_int();
      c.expect(',');
      int b = c.small_int();
      c.expect(')');
      bd.push_back({a, b});
      any_bd = true;
    } else {
      bd.push_back({1, 0});
      all_bd = false;
    }
    if (c.accept(',')) continue;
    c.expect(']');
    break;
  }
  if (!c.eof()) c.fail("trailing input after ring declaration");
  if (any_bd && !all_bd) c.fail("either every variable or none carries a bidegree");
  try {
    return make_ring(f, std::move(names), any_bd ? std::move(bd) : std::vector<Bidegree>{});
  } catch (const std::invalid_argument& e) {
    c.fail(e.what());
  }
}

// -------------------------------------------------------------- Polynomial

namespace {

const MonomialOrder& storage_order(int n) {
  thread_local std::vector<MonomialOrder> cache;
  if (static_cast<int>(cache.size()) <= n)
    for (int k = static_cast<int>(cache.size()); k <= n; ++k)
      cache.push_back(MonomialOrder::degrevlex(k));
  return cache[n];
}

// stored order: descending degrevlex with identity permutation
bool store_greater(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg > b.deg;
  for (int k = a.n - 1; k >= 0; --k)
    if (a.e[k] != b.e[k]) return a.e[k] < b.e[k];
  return false;
}

}  // namespace

void Polynomial::check_ring(const Polynomial& g) const {
  if (!same_ring(ring_, g.ring_)) throw std::invalid_argument("polynomials from different rings");
}

Polynomial Polynomial::constant(RingPtr r, const FieldElement& c) {
  return monomial(r, Monomial::one(r->nvars()), c);
}

Polynomial Polynomial::constant(RingPtr r, long c) {
  FieldElement e(r->field, c);
  return constant(std::move(r), e);
}

Polynomial Polynomial::variable(RingPtr r, int i) {
  int n = r->nvars();
  return monomial(r, Monomial::var(n, i), FieldElement(r->field, 1));
}

Polynomial Polynomial::monomial(RingPtr r, const Monomial& m, const FieldElement& c) {
  Polynomial p(std::move(r));
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr r, std::vector<Term> terms) {
  Polynomial p(std::move(r));
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return store_greater(a.m, b.m); });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().m == t.m) {
      p.terms_.back().c += t.c;
      if (p.terms_.back().c.is_zero()) p.terms_.pop_back();
    } else if (!t.c.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

int Polynomial::degree() const { return terms_.empty() ? -1 : terms_.front().m.deg; }

bool Polynomial::is_homogeneous() const {
  return terms_.empty() || terms_.back().m.deg == terms_.front().m.deg;
}

std::optional<Bidegree> Polynomial::bidegree() const {
  if (terms_.empty()) return Bidegree{0, 0};
  if (!ring_->bigraded()) return std::nullopt;
  std::optional<Bidegree> out;
  for (auto& t : terms_) {
    Bidegree b{0, 0};
    for (int i = 0; i < t.m.n; ++i) {
      b[0] += t.m.e[i] * ring_->bidegrees[i][0];
      b[1] += t.m.e[i] * ring_->bidegrees[i][1];
    }
    if (out && *out != b) return std::nullopt;
    out = b;
  }
  return out;
}

const Term& Polynomial::lead(const MonomialOrder& ord) const {
  if (terms_.empty()) throw std::logic_error("lead of zero polynomial");
  if (ord.kind == OrderKind::Degrevlex && ord.perm == storage_order(ring_->nvars()).perm)
    return terms_.front();
  std::size_t best = 0;
  for (std::size_t k = 1; k < terms_.size(); ++k)
    if (ord.compare(terms_[k].m, terms_[best].m) > 0) best = k;
  return terms_[best];
}

FieldElement Polynomial::coefficient(const Monomial& m) const {
  for (auto& t : terms_)
    if (t.m == m) return t.c;
  return FieldElement(ring_->field, 0);
}

Polynomial Polynomial::operator+(const Polynomial& g) const {
  if (!ring_) return g;
  if (!g.ring_) return *this;
  check_ring(g);
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + g.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < g.terms_.size()) {
    const Term& a = terms_[i];
    const Term& b = g.terms_[j];
    if (a.m == b.m) {
      FieldElement c = a.c + b.c;
      if (!c.is_zero()) r.terms_.push_back({a.m, c});
      ++i;
      ++j;
    } else if (store_greater(a.m, b.m)) {
      r.terms_.push_back(a);
      ++i;
    } else {
      r.terms_.push_back(b);
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < g.terms_.size(); ++j) r.terms_.push_back(g.terms_[j]);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& g) const { return *this + (-g); }

Polynomial Polynomial::operator*(const FieldElement& c) const {
  Polynomial r(ring_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (auto& t : terms_) r.terms_.push_back({t.m, t.c * c});
  return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, const FieldElement& c) const {
  Polynomial r(ring_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  // multiplying by a monomial preserves the order
  for (auto& t : terms_) r.terms_.push_back({t.m * m, t.c * c});
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& g) const {
  check_ring(g);
  if (terms_.empty() || g.terms_.empty()) return Polynomial(ring_);
  const Polynomial& small = terms_.size() <= g.terms_.size() ? *this : g;
  const Polynomial& big = terms_.size() <= g.terms_.size() ? g : *this;
  if (small.terms_.size() == 1) return big.mul_term(small.terms_[0].m, small.terms_[0].c);
  std::vector<Term> all;
  all.reserve(terms_.size() * g.terms_.size());
  for (auto& a : terms_)
    for (auto& b : g.terms_) all.push_back({a.m * b.m, a.c * b.c});
  return from_terms(ring_, std::move(all));
}

Polynomial Polynomial::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative exponent");
  Polynomial r = constant(ring_, 1), b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

bool Polynomial::operator==(const Polynomial& g) const {
  if (terms_.size() != g.terms_.size()) return false;
  if (!terms_.empty()) check_ring(g);
  for (std::size_t k = 0; k < terms_.size(); ++k)
    if (terms_[k].m != g.terms_[k].m || terms_[k].c != g.terms_[k].c) return false;
  return true;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return *this * terms_.front().c.inverse();
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  if (static_cast<int>(images.size()) != ring_->nvars())
    throw std::invalid_argument("substitution needs one image per variable");
  if (images.empty()) return *this;
  RingPtr target = images[0].ring();
  Polynomial out(target);
  // cache powers per variable
  std::vector<std::vector<Polynomial>> pw(images.size());
  for (auto& t : terms_) {
    Polynomial p = constant(target, t.c.is_zero() ? FieldElement(target->field, 0) : t.c);
    for (int i = 0; i < t.m.n; ++i) {
      int e = t.m.e[i];
      if (!e) continue;
      auto& v = pw[i];
      if (v.empty()) v.push_back(constant(target, 1));
      while (static_cast<int>(v.size()) <= e) v.push_back(v.back() * images[i]);
      p = p * v[e];
    }
    out += p;
  }
  return out;
}

Polynomial Polynomial::with_ring(const RingPtr& r) const {
  if (r->nvars() != ring_->nvars()) throw std::invalid_argument("variable count mismatch");
  Polynomial p(r);
  p.terms_.reserve(terms_.size());
  for (auto& t : terms_)
    p.terms_.push_back({t.m, r->field == ring_->field ? t.c : FieldElement(r->field, t.c.rational())});
  if (r->field != ring_->field) return from_terms(r, std::move(p.terms_));
  return p;
}

Polynomial Polynomial::part(int d) const {
  Polynomial p(ring_);
  for (auto& t : terms_)
    if (t.m.deg == d) p.terms_.push_back(t);
  return p;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& t : terms_) {
    std::string c = t.c.to_string();
    bool neg = !c.empty() && c[0] == '-';
    if (neg) c = c.substr(1);
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    first = false;
    std::string mono;
    for (int i = 0; i < t.m.n; ++i) {
      if (!t.m.e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->names[i];
      if (t.m.e[i] > 1) mono += "^" + std::to_string(t.m.e[i]);
    }
    if (mono.empty())
      s += c;
    else if (c == "1")
      s += mono;
    else
      s += c + "*" + mono;
  }
  return s;
}

// ------------------------------------------------------------------ parser

namespace {

struct PolyParser {
  Cursor c;
  const RingPtr& r;

  Polynomial expr() {
    Polynomial acc(r);
    bool first = true;
    while (true) {
      bool neg = false;
      if (c.accept('-'))
        neg = true;
      else if (!first && !c.accept('+'))
        break;
      else if (first)
        c.accept('+');
      Polynomial t = term();
      acc += neg ? -t : t;
      first = false;
      char p = c.peek();
      if (p != '+' && p != '-') break;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      if (c.accept('*')) {
        acc = acc * factor();
      } else if (c.peek() == '/') {
        ++c.i;
        std::size_t at = c.i;
        Polynomial d = factor();
        if (!d.is_constant() || d.is_zero()) {
          c.i = at;
          c.fail("division only by a nonzero constant");
        }
        acc = acc * d.terms()[0].c.inverse();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial b = primary();
    if (c.accept('^')) {
      std::string d = c.digits();
      if (d.size() > 3) c.fail("exponent too large");
      int k = std::stoi(d);
      if (k > 255) c.fail("exponent too large");
      b = b.pow(k);
    }
    return b;
  }

  Polynomial primary() {
    char p = c.peek();
    if (p == '(') {
      ++c.i;
      Polynomial e = expr();
      c.expect(')');
      return e;
    }
    if (p == '-') {
      ++c.i;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(p))) {
      std::string d = c.digits();
      mpq_class v;
      v.set_str(d, 10);
      return Polynomial::constant(r, FieldElement(r->field, v));
    }
    if (std::isalpha(static_cast<unsigned char>(p)) || p == '_') {
      std::size_t at = c.i;
      std::string name = c.ident();
      int idx = r->index_of(name);
      if (idx < 0) {
        c.i = at;
        c.fail("unknown variable '" + name + "'");
      }
      return Polynomial::variable(r, idx);
    }
    if (p == '\0') c.fail("unexpected end of input");
    c.fail(std::string("unexpected character '") + p + "'");
  }
};

}  // namespace

Polynomial parse_polynomial(const RingPtr& r, std::string_view text, int line, int column0) {
  PolyParser pp{Cursor{text, 0, line, column0}, r};
  if (pp.c.eof()) pp.c.fail("empty polynomial");
  Polynomial p;
  try {
    p = pp.expr();
  } catch (const FieldError& e) {
    pp.c.fail(e.what());
  } catch (const std::overflow_error& e) {
    pp.c.fail(e.what());
  }
  if (!pp.c.eof()) pp.c.fail("unexpected trailing input");
  return p;
}

std::vector<Polynomial> parse_polynomial_list(const RingPtr& r, std::string_view text, int line) {
  std::vector<Polynomial> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    char ch = i < text.size() ? text[i] : ',';
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(parse_polynomial(r, text.substr(start, i - start), line,
                                     static_cast<int>(start) + 1));
      start = i + 1;
    }
  }
  return out;
}

std::vector<Monomial> monomials_of_degree(int nvars, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  Monomial m = Monomial::one(nvars);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == nvars - 1) {
      m.set(i, left);
      out.push_back(m);
      m.set(i, 0);
      return;
    }
    for (int k = left; k >= 0; --k) {
      m.set(i, k);
      rec(i + 1, left - k);
    }
    m.set(i, 0);
  };
  if (nvars == 0) {
    if (d == 0) out.push_back(m);
    return out;
  }
  rec(0, d);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return store_greater(a, b); });
  return out;
}

Polynomial map_variables(const Polynomial& f, const RingPtr& target, const std::vector<int>& map) {
  std::vector<Term> ts;
  ts.reserve(f.size());
  const int n = target->nvars();
  for (auto& t : f.terms()) {
    Monomial m = Monomial::one(n);
    for (int i = 0; i < t.m.n; ++i) {
      if (!t.m.e[i]) continue;
      if (map[i] < 0) throw std::invalid_argument("variable cannot be mapped: " + f.ring()->names[i]);
      m.set(map[i], m[map[i]] + t.m.e[i]);
    }
    ts.push_back({m, t.c});
  }
  return Polynomial::from_terms(target, std::move(ts));
}

// -------------------------------------------------------------- linear forms

std::vector<FieldElement> linear_coefficients(const Polynomial& f) {
  const int n = f.ring()->nvars();
  std::vector<FieldElement> v(n, FieldElement(f.ring()->field, 0));
  for (auto& t : f.terms()) {
    if (t.m.deg != 1) throw std::invalid_argument("not a linear form: " + f.to_string());
    for (int i = 0; i < n; ++i)
      if (t.m.e[i]) v[i] = t.c;
  }
  return v;
}

Polynomial linear_form(const RingPtr& r, const std::vector<FieldElement>& coeffs) {
  std::vector<Term> ts;
  const int n = r->nvars();
  for (int i = 0; i < n && i < static_cast<int>(coeffs.size()); ++i)
    if (!coeffs[i].is_zero()) ts.push_back({Monomial::var(n, i), coeffs[i]});
  return Polynomial::from_terms(r, std::move(ts));
}

// ------------------------------------------------------------ LinearChange

namespace {

// inverse by Gauss-Jordan; empty result when singular
std::vector<std::vector<FieldElement>> invert(std::vector<std::vector<FieldElement>> a,
                                              const Field& f) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<FieldElement>> inv(n, std::vector<FieldElement>(n, FieldElement(f, 0)));
  for (int i = 0; i < n; ++i) inv[i][i] = FieldElement(f, 1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!a[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return {};
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    FieldElement s = a[col][col].inverse();
    for (int j = 0; j < n; ++j) {
      a[col][j] *= s;
      inv[col][j] *= s;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      FieldElement m = a[r][col];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= m * a[col][j];
        inv[r][j] -= m * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

LinearChange::LinearChange(RingPtr r, std::vector<std::vector<FieldElement>> m)
    : ring_(std::move(r)), m_(std::move(m)) {
  const int n = ring_->nvars();
  if (static_cast<int>(m_.size()) != n) throw std::invalid_argument("change matrix size");
  for (auto& row : m_)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("change matrix size");
  if (invert(m_, ring_->field).empty()) throw std::invalid_argument("change matrix is singular");
  for (int i = 0; i < n; ++i) images_.push_back(linear_form(ring_, m_[i]));
}

LinearChange LinearChange::identity(RingPtr r) {
  const int n = r->nvars();
  std::vector<std::vector<FieldElement>> m(n, std::vector<FieldElement>(n, FieldElement(r->field, 0)));
  for (int i = 0; i < n; ++i) m[i][i] = FieldElement(r->field, 1);
  return LinearChange(std::move(r), std::move(m));
}

Polynomial LinearChange::apply(const Polynomial& f) const { return f.substitute(images_); }

LinearChange LinearChange::inverse() const {
  // x -> A x has inverse x -> A^{-1} x as substitutions, composed in the same convention
  return LinearChange(ring_, invert(m_, ring_->field));
}

}  // namespace koszulkit
