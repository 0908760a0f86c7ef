#include "deolog/syntax.hpp"

#include <array>
#include <sstream>

namespace deolog {

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected,
                         const std::string& detail)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "syntax error at offset " << offset << ": " << detail;
        if (!expected.empty()) {
          os << " (expected ";
          for (std::size_t i = 0; i < expected.size(); ++i) os << (i ? ", " : "") << expected[i];
          os << ")";
        }
        return os.str();
      }()),
      offset_(offset),
      expected_(std::move(expected)),
      detail_(detail) {}

namespace {

enum class Tok {
  ident,
  meta,
  lparen,
  rparen,
  comma,
  not_,
  and_,
  or_,
  implies,
  iff,
  geq,
  gt,
  leq,
  lt,
  approx,
  box,
  dia,
  oblig,
  perm,
  cond,
  top,
  bot,
  end,
};

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

const std::vector<std::string>& operand_starts() {
  static const std::vector<std::string> v = {"identifier", "T", "F", "(", "~", "[]", "<>",
                                             "O",          "P", "C"};
  return v;
}

const std::vector<std::string>& binary_ops() {
  static const std::vector<std::string> v = {"&", "|", "->", "<->", ">=", ">", "<=", "<", "~~"};
  return v;
}

struct Unicode {
  std::string_view utf8;
  Tok kind;
};

constexpr std::array<Unicode, 16> unicode_tokens{{
    {"¬", Tok::not_},    {"∧", Tok::and_},   {"∨", Tok::or_},
    {"→", Tok::implies}, {"↔", Tok::iff},    {"≽", Tok::geq},
    {"⪰", Tok::geq},     {"≻", Tok::gt},     {"≼", Tok::leq},
    {"≺", Tok::lt},      {"≈", Tok::approx}, {"□", Tok::box},
    {"◇", Tok::dia},     {"⊤", Tok::top},    {"⊥", Tok::bot},
    {"⪯", Tok::leq},
}};

bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

std::vector<Token> lex(std::string_view s, bool allow_meta) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view lit) { return s.substr(i, lit.size()) == lit; };
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t at = i;
    if ((c >= 'a' && c <= 'z') || c == '_') {
      std::size_t j = i + 1;
      while (j < s.size() && ident_char(s[j])) ++j;
      std::string name(s.substr(i, j - i));
      if (c == '_' && !is_reserved_variable_name(name))
        throw SyntaxError(at, {"identifier"}, "malformed identifier '" + name + "'");
      out.push_back({Tok::ident, at, std::move(name)});
      i = j;
      continue;
    }
    if (c == '$') {
      if (!allow_meta) throw SyntaxError(at, operand_starts(), "metavariables are not allowed here");
      std::size_t j = i + 1;
      while (j < s.size() && ident_char(s[j])) ++j;
      if (j == i + 1) throw SyntaxError(j, {"metavariable name"}, "empty metavariable");
      out.push_back({Tok::meta, at, std::string(s.substr(i + 1, j - i - 1))});
      i = j;
      continue;
    }
    struct Fixed {
      std::string_view lit;
      Tok kind;
    };
    static constexpr std::array<Fixed, 19> fixed{{
        {"<->", Tok::iff}, {"->", Tok::implies}, {"<=", Tok::leq},  {"<>", Tok::dia},
        {">=", Tok::geq},  {"~~", Tok::approx},  {"[]", Tok::box},  {"<", Tok::lt},
        {">", Tok::gt},    {"~", Tok::not_},     {"&", Tok::and_},  {"|", Tok::or_},
        {"(", Tok::lparen}, {")", Tok::rparen},  {",", Tok::comma}, {"O", Tok::oblig},
        {"P", Tok::perm},  {"C", Tok::cond},     {"T", Tok::top},
    }};
    bool matched = false;
    for (const auto& f : fixed) {
      if (starts(f.lit)) {
        out.push_back({f.kind, at, std::string(f.lit)});
        i += f.lit.size();
        matched = true;
        break;
      }
    }
    if (!matched && c == 'F') {
      out.push_back({Tok::bot, at, "F"});
      ++i;
      matched = true;
    }
    if (!matched) {
      for (const auto& u : unicode_tokens) {
        if (starts(u.utf8)) {
          out.push_back({u.kind, at, std::string(u.utf8)});
          i += u.utf8.size();
          matched = true;
          break;
        }
      }
    }
    if (!matched) {
      std::vector<std::string> expected = operand_starts();
      expected.insert(expected.end(), binary_ops().begin(), binary_ops().end());
      throw SyntaxError(at, std::move(expected), std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::end, s.size(), ""});
  return out;
}

bool is_pref_tok(Tok t) {
  return t == Tok::geq || t == Tok::gt || t == Tok::leq || t == Tok::lt || t == Tok::approx;
}

Op pref_op(Tok t) {
  switch (t) {
    case Tok::geq: return Op::pref_weak;
    case Tok::gt: return Op::pref_strict;
    case Tok::leq: return Op::pref_weak_rev;
    case Tok::lt: return Op::pref_strict_rev;
    default: return Op::pref_eq;
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Surface parse_all() {
    Surface f = pref();
    if (peek().kind != Tok::end) {
      std::vector<std::string> expected = binary_ops();
      expected.push_back("end of input");
      throw SyntaxError(peek().offset, std::move(expected), "unexpected '" + peek().text + "'");
    }
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  void expect(Tok kind, const std::string& what, std::vector<std::string> alternatives = {}) {
    if (peek().kind != kind) {
      alternatives.push_back(what);
      throw SyntaxError(peek().offset, std::move(alternatives),
                        peek().kind == Tok::end ? "unexpected end of input"
                                                : "unexpected '" + peek().text + "'");
    }
    ++pos_;
  }

  Surface pref() {
    Surface left = iff();
    if (!is_pref_tok(peek().kind)) return left;
    Op op = pref_op(take().kind);
    Surface right = iff();
    if (is_pref_tok(peek().kind))
      throw SyntaxError(peek().offset, {"parenthesized operand"},
                        "preference operators are non-associative");
    return Surface::binary(op, std::move(left), std::move(right));
  }

  Surface iff() {
    Surface left = implies();
    while (peek().kind == Tok::iff) {
      take();
      left = Surface::binary(Op::iff, std::move(left), implies());
    }
    return left;
  }

  Surface implies() {
    Surface left = disj();
    if (peek().kind != Tok::implies) return left;
    take();
    return Surface::binary(Op::implies, std::move(left), implies());
  }

  Surface disj() {
    Surface left = conj();
    while (peek().kind == Tok::or_) {
      take();
      left = Surface::binary(Op::or_, std::move(left), conj());
    }
    return left;
  }

  Surface conj() {
    Surface left = unary();
    while (peek().kind == Tok::and_) {
      take();
      left = Surface::binary(Op::and_, std::move(left), unary());
    }
    return left;
  }

  Surface unary() {
    switch (peek().kind) {
      case Tok::not_: take(); return Surface::unary(Op::not_, unary());
      case Tok::approx:
        // In operand position `~~` is a double negation.
        take();
        return Surface::unary(Op::not_, Surface::unary(Op::not_, unary()));
      case Tok::box: take(); return Surface::unary(Op::box, unary());
      case Tok::dia: take(); return Surface::unary(Op::diamond, unary());
      case Tok::oblig: take(); return Surface::unary(Op::oblig, unary());
      case Tok::perm: take(); return Surface::unary(Op::perm, unary());
      default: return primary();
    }
  }

  Surface primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::ident: take(); return Surface::var(t.text);
      case Tok::meta: take(); return Surface::meta(t.text);
      case Tok::top: take(); return Surface::top();
      case Tok::bot: take(); return Surface::bot();
      case Tok::lparen: {
        take();
        Surface inner = pref();
        expect(Tok::rparen, ")", binary_ops());
        return inner;
      }
      case Tok::cond: {
        std::size_t at = t.offset;
        take();
        expect(Tok::lparen, "(");
        std::vector<Surface> args;
        args.push_back(pref());
        while (peek().kind == Tok::comma) {
          take();
          args.push_back(pref());
        }
        expect(Tok::rparen, ")", {","});
        if (args.size() != 2)
          throw SyntaxError(at, {}, "C expects 2 arguments, got " + std::to_string(args.size()));
        return Surface::binary(Op::cond_oblig, std::move(args[0]), std::move(args[1]));
      }
      default:
        throw SyntaxError(t.offset, operand_starts(),
                          t.kind == Tok::end ? "unexpected end of input"
                                             : "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Printer precedence levels; higher binds tighter.
enum Level : int { lv_pref = 1, lv_iff, lv_imp, lv_or, lv_and, lv_unary, lv_atom };

int level_of(Op op) {
  switch (op) {
    case Op::var:
    case Op::top:
    case Op::bot:
    case Op::meta:
    case Op::cond_oblig:
      return lv_atom;
    case Op::not_:
    case Op::box:
    case Op::diamond:
    case Op::oblig:
    case Op::perm:
      return lv_unary;
    case Op::and_: return lv_and;
    case Op::or_: return lv_or;
    case Op::implies: return lv_imp;
    case Op::iff: return lv_iff;
    default: return lv_pref;
  }
}

const char* binary_symbol(Op op) {
  switch (op) {
    case Op::and_: return " & ";
    case Op::or_: return " | ";
    case Op::implies: return " -> ";
    case Op::iff: return " <-> ";
    case Op::pref_weak: return " >= ";
    case Op::pref_strict: return " > ";
    case Op::pref_eq: return " ~~ ";
    case Op::pref_weak_rev: return " <= ";
    case Op::pref_strict_rev: return " < ";
    default: return " ? ";
  }
}

void emit(const Surface& f, int required, std::string& out) {
  int lv = level_of(f.op());
  bool paren = lv < required;
  if (paren) out += '(';
  switch (f.op()) {
    case Op::var: out += f.name(); break;
    case Op::meta: out += '$'; out += f.name(); break;
    case Op::top: out += 'T'; break;
    case Op::bot: out += 'F'; break;
    case Op::not_: out += '~'; emit(f.kid(0), lv_unary, out); break;
    case Op::box: out += "[]"; emit(f.kid(0), lv_unary, out); break;
    case Op::diamond: out += "<>"; emit(f.kid(0), lv_unary, out); break;
    case Op::oblig: out += "O "; emit(f.kid(0), lv_unary, out); break;
    case Op::perm: out += "P "; emit(f.kid(0), lv_unary, out); break;
    case Op::cond_oblig:
      out += "C(";
      emit(f.kid(0), 0, out);
      out += ", ";
      emit(f.kid(1), 0, out);
      out += ')';
      break;
    case Op::implies:
      emit(f.kid(0), lv + 1, out);
      out += binary_symbol(f.op());
      emit(f.kid(1), lv, out);
      break;
    case Op::and_:
    case Op::or_:
    case Op::iff:
      emit(f.kid(0), lv, out);
      out += binary_symbol(f.op());
      emit(f.kid(1), lv + 1, out);
      break;
    default:
      emit(f.kid(0), lv + 1, out);
      out += binary_symbol(f.op());
      emit(f.kid(1), lv + 1, out);
      break;
  }
  if (paren) out += ')';
}

}  // namespace

Surface parse(std::string_view text, const ParseOptions& opts) {
  return Parser(lex(text, opts.allow_metavariables)).parse_all();
}

std::string print(const Surface& f) {
  std::string out;
  emit(f, 0, out);
  return out;
}

std::string print(const Core& f) { return print(embed(f)); }

}  // namespace deolog
