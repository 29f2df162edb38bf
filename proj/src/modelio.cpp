#include "tanaka/modelio.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "json.hpp"
#include "tanaka/errors.hpp"

namespace tanaka {

namespace {

enum class Tok { ident, integer, plus, minus, star, caret, slash, lparen, rparen,
                 lbracket, rbracket, comma, equals, end };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  void advance() {
    if (pos < src.size() && src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  std::vector<std::vector<Token>> lines() {
    std::vector<std::vector<Token>> out;
    std::vector<Token> cur;
    while (pos < src.size()) {
      const char c = src[pos];
      if (c == '\n') {
        if (!cur.empty()) out.push_back(std::move(cur));
        cur.clear();
        advance();
        continue;
      }
      if (c == '#') { // comment to end of line
        while (pos < src.size() && src[pos] != '\n') advance();
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      const int tl = line, tc = col;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string id;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
          id += src[pos];
          advance();
        }
        cur.push_back({Tok::ident, id, tl, tc});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
          num += src[pos];
          advance();
        }
        if (pos < src.size() && src[pos] == '.')
          throw ParseError("non-rational literal (use a/b)", line, col);
        cur.push_back({Tok::integer, num, tl, tc});
        continue;
      }
      Tok k;
      switch (c) {
        case '+': k = Tok::plus; break;
        case '-': k = Tok::minus; break;
        case '*': k = Tok::star; break;
        case '^': k = Tok::caret; break;
        case '/': k = Tok::slash; break;
        case '(': k = Tok::lparen; break;
        case ')': k = Tok::rparen; break;
        case '[': k = Tok::lbracket; break;
        case ']': k = Tok::rbracket; break;
        case ',': k = Tok::comma; break;
        case '=': k = Tok::equals; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      }
      cur.push_back({k, std::string(1, c), tl, tc});
      advance();
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
  }
};

// a parsed expression value: a scalar polynomial or a vector field
struct Value {
  bool is_field;
  Polynomial p;
  VectorField v;

  static Value scalar(Polynomial q) { return {false, std::move(q), {}}; }
  static Value field(VectorField f) { return {true, {}, std::move(f)}; }
};

struct ExprParser {
  const std::vector<Token>& toks;
  size_t pos;
  const Chart& chart;
  const std::map<std::string, VectorField>& fields;

  const Token& peek() const {
    static Token end{Tok::end, "", 0, 0};
    return pos < toks.size() ? toks[pos] : end;
  }
  Token take() {
    if (pos >= toks.size()) {
      const Token& last = toks.empty() ? Token{Tok::end, "", 1, 1} : toks.back();
      throw ParseError("unexpected end of expression", last.line, last.col + 1);
    }
    return toks[pos++];
  }
  bool at_end() const { return pos >= toks.size(); }

  int coord_index(const std::string& name) const {
    const auto it = std::find(chart.begin(), chart.end(), name);
    return it == chart.end() ? -1 : static_cast<int>(it - chart.begin());
  }

  Value parse_expression() {
    Value acc = parse_term();
    while (!at_end() && (peek().kind == Tok::plus || peek().kind == Tok::minus)) {
      const Token op = take();
      Value rhs = parse_term();
      if (acc.is_field != rhs.is_field)
        throw ParseError("cannot add a scalar and a vector field", op.line, op.col);
      if (acc.is_field) {
        acc.v = op.kind == Tok::plus ? acc.v + rhs.v : acc.v - rhs.v;
      } else {
        acc.p = op.kind == Tok::plus ? acc.p + rhs.p : acc.p - rhs.p;
      }
    }
    return acc;
  }

  bool starts_factor() const {
    switch (peek().kind) {
      case Tok::ident:
      case Tok::integer:
      case Tok::lparen:
        return true;
      default:
        return false;
    }
  }

  Value parse_term() {
    bool negate = false;
    while (peek().kind == Tok::minus) {
      take();
      negate = !negate;
    }
    Value acc = parse_factor();
    while (!at_end() && (peek().kind == Tok::star || starts_factor())) {
      const Token at = peek();
      if (peek().kind == Tok::star) take();
      Value rhs = parse_factor();
      if (acc.is_field && rhs.is_field)
        throw ParseError("cannot multiply two vector fields", at.line, at.col);
      if (acc.is_field) {
        acc.v = acc.v * rhs.p;
      } else if (rhs.is_field) {
        acc = Value::field(rhs.v * acc.p);
      } else {
        acc.p = acc.p * rhs.p;
      }
    }
    if (negate) {
      if (acc.is_field)
        acc.v = -acc.v;
      else
        acc.p = -acc.p;
    }
    return acc;
  }

  Value parse_factor() {
    const Token t = take();
    switch (t.kind) {
      case Tok::integer: {
        mpz_class num(t.text);
        if (!at_end() && peek().kind == Tok::slash) {
          take();
          const Token den = take();
          if (den.kind != Tok::integer)
            throw ParseError("expected an integer denominator", den.line, den.col);
          return Value::scalar(
              Polynomial::constant(chart, Rational(num, mpz_class(den.text))));
        }
        return Value::scalar(Polynomial::constant(chart, Rational(num)));
      }
      case Tok::lparen: {
        Value inner = parse_expression();
        const Token close = take();
        if (close.kind != Tok::rparen)
          throw ParseError("expected ')'", close.line, close.col);
        return maybe_power(std::move(inner), t);
      }
      case Tok::ident: {
        // basis token d/d<coord>
        if (t.text == "d" && peek().kind == Tok::slash) {
          take();
          const Token dc = take();
          if (dc.kind != Tok::ident || dc.text.size() < 2 || dc.text[0] != 'd')
            throw ParseError("expected d/d<coordinate>", dc.line, dc.col);
          const std::string coord = dc.text.substr(1);
          const int idx = coord_index(coord);
          if (idx < 0) throw ParseError("unknown coordinate '" + coord + "'", dc.line, dc.col);
          return Value::field(VectorField::coordinate(chart, static_cast<size_t>(idx)));
        }
        const int idx = coord_index(t.text);
        if (idx >= 0) {
          return maybe_power(
              Value::scalar(Polynomial::variable(chart, static_cast<size_t>(idx))), t);
        }
        const auto it = fields.find(t.text);
        if (it != fields.end()) return Value::field(it->second);
        throw ParseError("unknown coordinate or undefined field '" + t.text + "'", t.line,
                         t.col);
      }
      default:
        throw ParseError("unexpected token '" + t.text + "'", t.line, t.col);
    }
  }

  Value maybe_power(Value base, const Token& at) {
    if (at_end() || peek().kind != Tok::caret) return base;
    take();
    const Token e = take();
    if (e.kind != Tok::integer)
      throw ParseError("exponent must be a non-negative integer", e.line, e.col);
    if (base.is_field) throw ParseError("cannot raise a vector field to a power", at.line, at.col);
    return Value::scalar(base.p.pow(static_cast<unsigned>(std::stoul(e.text))));
  }
};

bool keyword(const std::string& s) {
  return s == "model" || s == "coords" || s == "field" || s == "distribution" ||
         s == "marked" || s == "point";
}

Rational parse_rational_tokens(const std::vector<Token>& toks, size_t& i) {
  bool neg = false;
  while (i < toks.size() && toks[i].kind == Tok::minus) {
    neg = !neg;
    ++i;
  }
  if (i >= toks.size() || toks[i].kind != Tok::integer)
    throw ParseError("expected a rational value",
                     toks.empty() ? 1 : toks.back().line,
                     toks.empty() ? 1 : toks.back().col);
  mpz_class num(toks[i].text);
  ++i;
  mpz_class den(1);
  if (i < toks.size() && toks[i].kind == Tok::slash) {
    ++i;
    if (i >= toks.size() || toks[i].kind != Tok::integer)
      throw ParseError("expected an integer denominator", toks[i - 1].line, toks[i - 1].col);
    den = mpz_class(toks[i].text);
    ++i;
  }
  if (neg) num = -num;
  return Rational(num, den);
}

} // namespace

Model parse_model(const std::string& text) {
  Lexer lex(text);
  const auto lines = lex.lines();

  Model m;
  bool have_coords = false;

  for (const auto& toks : lines) {
    const Token& head = toks.front();
    if (head.kind != Tok::ident || !keyword(head.text))
      throw ParseError("expected a statement keyword", head.line, head.col);

    if (head.text == "model") {
      if (toks.size() != 2 || toks[1].kind != Tok::ident)
        throw ParseError("expected: model NAME", head.line, head.col);
      m.name = toks[1].text;
      continue;
    }
    if (head.text == "coords") {
      if (have_coords) throw ParseError("duplicate coords statement", head.line, head.col);
      for (size_t i = 1; i < toks.size(); ++i) {
        if (toks[i].kind != Tok::ident)
          throw ParseError("coordinate names must be identifiers", toks[i].line, toks[i].col);
        if (toks[i].text == "d")
          throw ParseError("coordinate name 'd' is reserved", toks[i].line, toks[i].col);
        if (std::find(m.chart.begin(), m.chart.end(), toks[i].text) != m.chart.end())
          throw ParseError("duplicate coordinate '" + toks[i].text + "'", toks[i].line,
                           toks[i].col);
        m.chart.push_back(toks[i].text);
      }
      if (m.chart.empty()) throw ParseError("coords statement needs names", head.line, head.col);
      have_coords = true;
      continue;
    }
    if (!have_coords)
      throw ParseError("coords must come before field definitions", head.line, head.col);

    if (head.text == "field") {
      if (toks.size() < 4 || toks[1].kind != Tok::ident || toks[2].kind != Tok::equals)
        throw ParseError("expected: field NAME = expression", head.line, head.col);
      const std::string name = toks[1].text;
      if (keyword(name)) throw ParseError("field name collides with a keyword", toks[1].line, toks[1].col);
      if (m.fields.count(name))
        throw ParseError("duplicate field '" + name + "'", toks[1].line, toks[1].col);
      std::vector<Token> expr(toks.begin() + 3, toks.end());
      ExprParser ep{expr, 0, m.chart, m.fields};
      Value v = ep.parse_expression();
      if (!ep.at_end())
        throw ParseError("trailing tokens after expression", ep.peek().line, ep.peek().col);
      if (!v.is_field)
        throw ParseError("expression does not define a vector field", head.line, head.col);
      m.fields[name] = std::move(v.v);
      m.field_order.push_back(name);
      continue;
    }
    if (head.text == "distribution") {
      if (!m.distribution.empty())
        throw ParseError("duplicate distribution statement", head.line, head.col);
      size_t i = 1;
      if (i < toks.size() && toks[i].kind == Tok::ident) {
        m.distribution_name = toks[i].text;
        ++i;
      }
      if (i >= toks.size() || toks[i].kind != Tok::equals)
        throw ParseError("expected: distribution NAME = [fields]", head.line, head.col);
      ++i;
      if (i >= toks.size() || toks[i].kind != Tok::lbracket)
        throw ParseError("expected '['", head.line, head.col);
      ++i;
      while (i < toks.size() && toks[i].kind != Tok::rbracket) {
        if (toks[i].kind == Tok::comma) {
          ++i;
          continue;
        }
        if (toks[i].kind != Tok::ident)
          throw ParseError("expected a field name", toks[i].line, toks[i].col);
        if (!m.fields.count(toks[i].text))
          throw ParseError("undefined field '" + toks[i].text + "' in distribution",
                           toks[i].line, toks[i].col);
        m.distribution.push_back(toks[i].text);
        ++i;
      }
      if (i >= toks.size())
        throw ParseError("unterminated distribution list", head.line, head.col);
      if (m.distribution.empty())
        throw ParseError("distribution must list at least one field", head.line, head.col);
      continue;
    }
    if (head.text == "marked") {
      if (toks.size() != 4 || toks[1].kind != Tok::ident || toks[2].kind != Tok::equals ||
          toks[3].kind != Tok::ident)
        throw ParseError("expected: marked ROLE = FIELD", head.line, head.col);
      if (!m.fields.count(toks[3].text))
        throw ParseError("undefined field '" + toks[3].text + "' in marked statement",
                         toks[3].line, toks[3].col);
      m.marked[toks[1].text] = toks[3].text;
      continue;
    }
    if (head.text == "point") {
      std::vector<Rational> vals;
      size_t i = 1;
      while (i < toks.size()) vals.push_back(parse_rational_tokens(toks, i));
      if (vals.size() != m.chart.size())
        throw ParseError("point needs one value per coordinate", head.line, head.col);
      m.base_point = PointQ{m.chart, std::move(vals)};
      continue;
    }
  }

  if (m.chart.empty()) throw ParseError("model has no coords statement", 1, 1);
  if (m.distribution.empty()) throw ParseError("model has no distribution statement", 1, 1);
  return m;
}

std::string print_model(const Model& m) {
  std::ostringstream os;
  if (!m.name.empty()) os << "model " << m.name << "\n";
  os << "coords";
  for (const std::string& c : m.chart) os << " " << c;
  os << "\n";
  for (const std::string& name : m.field_order)
    os << "field " << name << " = " << m.fields.at(name).str() << "\n";
  os << "distribution " << m.distribution_name << " = [";
  for (size_t i = 0; i < m.distribution.size(); ++i)
    os << (i ? ", " : "") << m.distribution[i];
  os << "]\n";
  for (const auto& [role, field] : m.marked) os << "marked " << role << " = " << field << "\n";
  if (m.base_point) {
    os << "point";
    for (const Rational& v : m.base_point->values) os << " " << v.str();
    os << "\n";
  }
  return os.str();
}

VectorField parse_field_expression(const Model& m, const std::string& text) {
  Lexer lex(text);
  const auto lines = lex.lines();
  if (lines.size() != 1) throw ParseError("expected a single expression", 1, 1);
  ExprParser ep{lines[0], 0, m.chart, m.fields};
  Value v = ep.parse_expression();
  if (!ep.at_end())
    throw ParseError("trailing tokens after expression", ep.peek().line, ep.peek().col);
  if (!v.is_field) throw ParseError("expression is not a vector field", 1, 1);
  return v.v;
}

PointQ parse_point(const Chart& chart, const std::string& text) {
  std::string norm = text;
  std::replace(norm.begin(), norm.end(), ',', ' ');
  Lexer lex(norm);
  const auto lines = lex.lines();
  if (lines.size() != 1) throw ParseError("expected point coordinates", 1, 1);
  std::vector<Rational> vals;
  size_t i = 0;
  while (i < lines[0].size()) vals.push_back(parse_rational_tokens(lines[0], i));
  if (vals.size() != chart.size())
    throw ParseError("point needs one value per coordinate", 1, 1);
  return PointQ{chart, std::move(vals)};
}

namespace {

nlohmann::ordered_json point_json(const PointQ& p) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const Rational& v : p.values) a.push_back(v.str());
  return a;
}

nlohmann::ordered_json witness_json(const std::optional<CharWitness>& w, bool take_p) {
  if (!w) return nullptr;
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const QuadExt& x : (take_p ? w->p : w->q)) a.push_back(x.str());
  return a;
}

const char* verdict_name(FinitenessReport::Verdict v) {
  switch (v) {
    case FinitenessReport::Verdict::finite_char_variety: return "finite_char_variety";
    case FinitenessReport::Verdict::finite_theorem2: return "finite_theorem2";
    default: return "inconclusive";
  }
}

const char* char_kind_name(CharVerdict::Kind k) {
  switch (k) {
    case CharVerdict::Kind::empty: return "empty";
    case CharVerdict::Kind::nonempty: return "nonempty";
    default: return "undecided";
  }
}

} // namespace

std::string emit_report(const FinitenessReport& r) {
  nlohmann::ordered_json j;
  j["model"] = r.model_name;
  j["point"] = point_json(r.point);
  j["growth_incremental"] = r.growth;
  j["growth_cumulative"] = r.cumulative;
  if (r.bracket_generating)
    j["kappa"] = r.kappa;
  else
    j["kappa"] = nullptr;
  j["bracket_generating"] = r.bracket_generating;
  j["tanaka"] = {{"dims", r.tanaka_dims},
                 {"total", r.tanaka_total ? nlohmann::ordered_json(*r.tanaka_total)
                                          : nlohmann::ordered_json(nullptr)},
                 {"terminated", r.tanaka_terminated},
                 {"cap", r.tanaka_cap}};
  j["h0_dim"] = r.h0_dim;
  j["char_variety"] = {{"verdict", char_kind_name(r.char_verdict.kind)},
                       {"witness_p", witness_json(r.char_verdict.witness, true)},
                       {"witness_q", witness_json(r.char_verdict.witness, false)},
                       {"complex_certificate", r.char_verdict.complex_certificate},
                       {"stage", r.char_verdict.stage},
                       {"budget_spent", r.char_verdict.budget_spent}};
  j["theorem1_bound"] = r.theorem1_bound ? nlohmann::ordered_json(*r.theorem1_bound)
                                         : nlohmann::ordered_json(nullptr);
  j["theorem2_finite"] = r.theorem2;
  j["theorem2_status"] =
      r.theorem2 ? "finite" : (r.theorem2_conclusive ? "not_applicable" : "growth_too_short");
  j["finiteness_verdict"] = verdict_name(r.verdict);
  nlohmann::ordered_json samples = nlohmann::ordered_json::array();
  for (const auto& s : r.samples) {
    samples.push_back({{"point", point_json(s.point)},
                       {"growth_incremental", s.growth},
                       {"bracket_generating", s.bracket_generating},
                       {"terminated", s.terminated},
                       {"total", s.total ? nlohmann::ordered_json(*s.total)
                                         : nlohmann::ordered_json(nullptr)},
                       {"fingerprint_match", s.fingerprint_match}});
  }
  j["samples"] = samples;
  j["regular_at_samples"] = r.regular_at_samples;
  j["symbol_fingerprint"] = r.symbol_fingerprint;
  j["seed"] = r.seed;
  j["config"] = {{"max_degree", r.config.max_degree},
                 {"probe_samples", r.config.probe_samples},
                 {"seed", r.config.seed},
                 {"groebner_budget", r.config.groebner_budget},
                 {"degree_cap", r.config.degree_cap},
                 {"kappa_cap", r.config.kappa_cap},
                 {"cauchy_degree_bound", r.config.cauchy_degree_bound},
                 {"unknown_cap", r.config.unknown_cap},
                 {"grid_radius", r.config.grid_radius},
                 {"random_covectors", r.config.random_covectors},
                 {"minor_cap", r.config.minor_cap},
                 {"output", r.config.output}};
  j["version"] = kVersion;
  return j.dump(2) + "\n";
}

std::string render_text(const FinitenessReport& r) {
  std::ostringstream os;
  os << "model: " << r.model_name << "\n";
  os << "point:";
  for (const Rational& v : r.point.values) os << " " << v.str();
  os << "\n";
  os << "growth (incremental):";
  for (int g : r.growth) os << " " << g;
  os << "   cumulative:";
  for (int g : r.cumulative) os << " " << g;
  os << "\n";
  os << "bracket generating: " << (r.bracket_generating ? "yes" : "no");
  if (r.bracket_generating) os << "   kappa: " << r.kappa;
  os << "\n";
  os << "tanaka dims:";
  for (int d : r.tanaka_dims) os << " " << d;
  os << (r.tanaka_terminated ? "   (terminated)" : "   (capped)");
  if (r.tanaka_total) os << "   total: " << *r.tanaka_total;
  os << "\n";
  os << "h0 dim: " << r.h0_dim << "\n";
  os << "char variety: " << char_kind_name(r.char_verdict.kind) << " [stage "
     << r.char_verdict.stage << "]";
  if (r.char_verdict.witness) {
    os << "   witness p = (";
    for (size_t i = 0; i < r.char_verdict.witness->p.size(); ++i)
      os << (i ? ", " : "") << r.char_verdict.witness->p[i].str();
    os << "), q = (";
    for (size_t i = 0; i < r.char_verdict.witness->q.size(); ++i)
      os << (i ? ", " : "") << r.char_verdict.witness->q[i].str();
    os << ")";
  }
  os << "\n";
  if (r.theorem1_bound)
    os << "symmetry dimension bound (sampled): " << *r.theorem1_bound << "\n";
  os << "growth criterion: "
     << (r.theorem2 ? "finite" : (r.theorem2_conclusive ? "not applicable" : "growth too short"))
     << "\n";
  os << "verdict: " << verdict_name(r.verdict) << "\n";
  os << "samples: " << r.samples.size()
     << (r.regular_at_samples ? " (growth constant)" : " (growth varies!)") << "\n";
  os << "seed: " << r.seed << "   version: " << kVersion << "\n";
  return os.str();
}

std::string gnla_to_json(const GNLA& a) {
  nlohmann::ordered_json j;
  j["depth"] = a.depth;
  j["dims"] = a.dims;
  j["labels"] = a.labels;
  nlohmann::ordered_json br = nlohmann::ordered_json::array();
  for (const auto& [pair, comb] : a.table) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [k, c] : comb) terms.push_back({k, c.str()});
    br.push_back({{"i", pair.first}, {"j", pair.second}, {"terms", terms}});
  }
  j["brackets"] = br;
  return j.dump(2) + "\n";
}

} // namespace tanaka
