#include "hlab/diffpoly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace hlab {

int DiffMonomial::deriv_index() const {
  int n = 0;
  for (int l : orders) n += l;
  return n;
}

Rat DiffMonomial::rank(RankConvention conv) const {
  int m = degree();
  int n = deriv_index();
  Rat r = (conv == RankConvention::KdV) ? Rat(2 * m + n, 2) : Rat(m + n, 2);
  r.canonicalize();
  return r;
}

namespace {

// Canonical term order: ascending degree, then descending lexicographic on
// the nonincreasing orders sequence (so u{0}*u{2} prints before u{1}*u{1}).
bool term_before(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

DiffPoly::DiffPoly(Rat c) {
  if (c != 0) {
    c.canonicalize();
    terms_.push_back({std::move(c), {}});
  }
}

DiffPoly DiffPoly::var(int l) { return monomial(Rat(1), {l}); }

DiffPoly DiffPoly::monomial(Rat c, std::vector<int> orders) {
  DiffPoly p;
  if (c != 0) {
    c.canonicalize();
    std::sort(orders.begin(), orders.end(), std::greater<int>());
    p.terms_.push_back({std::move(c), std::move(orders)});
  }
  return p;
}

DiffPoly DiffPoly::from_terms(std::vector<DiffMonomial> terms) {
  DiffPoly p;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void DiffPoly::normalize() {
  std::map<std::vector<int>, Rat, decltype(&term_before)> merged(&term_before);
  for (auto& t : terms_) {
    std::sort(t.orders.begin(), t.orders.end(), std::greater<int>());
    merged[std::move(t.orders)] += t.coeff;
  }
  terms_.clear();
  for (auto& [orders, coeff] : merged) {
    if (coeff != 0) {
      coeff.canonicalize();
      terms_.push_back({coeff, orders});
    }
  }
}

bool DiffPoly::operator==(const DiffPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].orders != o.terms_[i].orders) return false;
    if (terms_[i].coeff != o.terms_[i].coeff) return false;
  }
  return true;
}

DiffPoly DiffPoly::operator+(const DiffPoly& o) const {
  std::vector<DiffMonomial> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return from_terms(std::move(all));
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

DiffPoly DiffPoly::operator-(const DiffPoly& o) const { return *this + (-o); }

DiffPoly DiffPoly::operator*(const DiffPoly& o) const {
  std::vector<DiffMonomial> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      DiffMonomial t;
      t.coeff = a.coeff * b.coeff;
      t.orders = a.orders;
      t.orders.insert(t.orders.end(), b.orders.begin(), b.orders.end());
      prod.push_back(std::move(t));
    }
  }
  return from_terms(std::move(prod));
}

DiffPoly DiffPoly::operator*(const Rat& c) const {
  if (c == 0) return zero();
  DiffPoly p = *this;
  for (auto& t : p.terms_) {
    t.coeff *= c;
    t.coeff.canonicalize();
  }
  return p;
}

DiffPoly operator*(const Rat& c, const DiffPoly& p) { return p * c; }

Rat DiffPoly::coefficient(std::vector<int> orders) const {
  std::sort(orders.begin(), orders.end(), std::greater<int>());
  for (const auto& t : terms_) {
    if (t.orders == orders) return t.coeff;
  }
  return Rat(0);
}

int DiffPoly::max_order() const {
  int m = -1;
  for (const auto& t : terms_) {
    for (int l : t.orders) m = std::max(m, l);
  }
  return m;
}

DiffPoly d_x(const DiffPoly& p) {
  std::vector<DiffMonomial> out;
  for (const auto& t : p.terms()) {
    for (size_t i = 0; i < t.orders.size(); ++i) {
      DiffMonomial b = t;
      b.orders[i] += 1;
      out.push_back(std::move(b));
    }
  }
  return DiffPoly::from_terms(std::move(out));
}

DiffPoly d_x(const DiffPoly& p, int times) {
  DiffPoly q = p;
  for (int i = 0; i < times; ++i) q = d_x(q);
  return q;
}

namespace {

// d/d(u_l): removes one factor of order l, weighted by its multiplicity.
DiffPoly partial(const DiffPoly& p, int l) {
  std::vector<DiffMonomial> out;
  for (const auto& t : p.terms()) {
    int mult = static_cast<int>(std::count(t.orders.begin(), t.orders.end(), l));
    if (mult == 0) continue;
    DiffMonomial b;
    b.coeff = t.coeff * mult;
    b.orders = t.orders;
    b.orders.erase(std::find(b.orders.begin(), b.orders.end(), l));
    out.push_back(std::move(b));
  }
  return DiffPoly::from_terms(std::move(out));
}

}  // namespace

DiffPoly euler(const DiffPoly& p) {
  int top = p.max_order();
  DiffPoly sum;
  for (int l = 0; l <= top; ++l) {
    DiffPoly g = partial(p, l);
    g = d_x(g, l);
    if (l % 2 == 1) g = -g;
    sum = sum + g;
  }
  return sum;
}

DiffPoly antiderivative(const DiffPoly& p) {
  if (p.is_zero()) return DiffPoly::zero();
  if (!euler(p).is_zero()) throw NotExact("not a total x-derivative");

  DiffPoly rest = p;
  DiffPoly result;
  // Generous step guard; exact inputs terminate long before this.
  long guard = 16;
  for (const auto& t : p.terms())
    guard += 4L * (t.degree() + 1) * (t.deriv_index() + 1);
  guard *= static_cast<long>(p.terms().size()) + 1;

  while (!rest.is_zero()) {
    if (--guard < 0) throw InternalError("antiderivative step guard exceeded");
    // Lexicographically maximal orders sequence (orders are nonincreasing,
    // terms sorted descending-lex within a degree, so scan all terms).
    const DiffMonomial* top = &rest.terms().front();
    for (const auto& t : rest.terms()) {
      if (std::lexicographical_compare(top->orders.begin(), top->orders.end(),
                                       t.orders.begin(), t.orders.end()))
        top = &t;
    }
    const int n = top->orders.empty() ? -1 : top->orders.front();
    if (n < 1) throw NotExact("constant or underived top monomial");
    if (top->orders.size() > 1 && top->orders[1] == n)
      throw NotExact("top order not linear");

    // top = c * u_n * (u_{n-1})^a * R  ->  preimage c/(a+1) * (u_{n-1})^{a+1} * R
    int a = 0;
    std::vector<int> pre_orders;
    pre_orders.push_back(n - 1);
    for (size_t i = 1; i < top->orders.size(); ++i) {
      if (top->orders[i] == n - 1)
        ++a;
      pre_orders.push_back(top->orders[i]);
    }
    DiffPoly pre = DiffPoly::monomial(top->coeff / (a + 1), std::move(pre_orders));
    result = result + pre;
    rest = rest - d_x(pre);
  }
  return result;
}

DiffPoly substitute(const DiffPoly& p, const DiffPoly& q) {
  int top = p.max_order();
  std::vector<DiffPoly> dq;  // dq[l] = d_x^l(q)
  dq.push_back(q);
  for (int l = 1; l <= top; ++l) dq.push_back(d_x(dq.back()));

  DiffPoly sum;
  for (const auto& t : p.terms()) {
    DiffPoly prod = DiffPoly::constant(t.coeff);
    for (int l : t.orders) prod = prod * dq[l];
    sum = sum + prod;
  }
  return sum;
}

RankInfo rank_info(const DiffPoly& p, RankConvention conv) {
  if (p.is_zero()) return {Rat(0), true};
  Rat r0 = p.terms().front().rank(conv);
  for (const auto& t : p.terms()) {
    if (t.rank(conv) != r0) return {r0, false};
  }
  return {r0, true};
}

std::string DiffPoly::to_string(char symbol) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << t.coeff.get_str();
    // Factors printed by ascending order, u{0} included explicitly.
    for (auto it = t.orders.rbegin(); it != t.orders.rend(); ++it) {
      os << (it == t.orders.rbegin() ? " * " : "*");
      os << symbol << '{' << *it << '}';
    }
  }
  return os.str();
}

namespace {

void skip_ws(const std::string& s, size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

Rat parse_rat(const std::string& s, size_t& i) {
  size_t start = i;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
  if (i == start) throw ParseError("expected rational at position " + std::to_string(start));
  Rat r;
  if (r.set_str(s.substr(start, i - start), 10) != 0)
    throw ParseError("bad rational '" + s.substr(start, i - start) + "'");
  r.canonicalize();
  return r;
}

}  // namespace

DiffPoly parse_diffpoly(const std::string& text, char symbol) {
  size_t i = 0;
  skip_ws(text, i);
  if (text.compare(i, 1, "0") == 0 && i + 1 >= text.size()) return DiffPoly::zero();

  std::vector<DiffMonomial> terms;
  while (true) {
    DiffMonomial t;
    t.coeff = parse_rat(text, i);
    skip_ws(text, i);
    if (i < text.size() && text[i] == '*') {
      ++i;
      while (true) {
        skip_ws(text, i);
        if (i >= text.size() || text[i] != symbol)
          throw ParseError("expected factor at position " + std::to_string(i));
        ++i;
        if (i < text.size() && text[i] == '{') {
          size_t close = text.find('}', i);
          if (close == std::string::npos) throw ParseError("unterminated order brace");
          t.orders.push_back(std::stoi(text.substr(i + 1, close - i - 1)));
          i = close + 1;
        } else {
          t.orders.push_back(0);  // bare symbol means u{0}
        }
        skip_ws(text, i);
        if (i < text.size() && text[i] == '*') {
          ++i;
          continue;
        }
        break;
      }
    }
    terms.push_back(std::move(t));
    skip_ws(text, i);
    if (i >= text.size()) break;
    if (text[i] != '+') throw ParseError("expected '+' at position " + std::to_string(i));
    ++i;
    skip_ws(text, i);
  }
  return DiffPoly::from_terms(std::move(terms));
}

}  // namespace hlab
