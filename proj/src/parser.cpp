#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcrn/errors.hpp"
#include "dcrn/format.hpp"
#include "dcrn/network.hpp"

namespace dcrn {
namespace {

enum class Tok { Ident, Number, Arrow, BiArrow, Plus, Semi, Comma, LParen, RParen, Path, End };

struct Token {
  Tok kind;
  std::string text;
  int column;  // 1-based
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto col = [&](std::size_t p) { return static_cast<int>(p) + 1; };
  while (i < line.size()) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (line.substr(i, 3) == "<->") {
      out.push_back({Tok::BiArrow, "<->", col(start)});
      i += 3;
    } else if (line.substr(i, 2) == "->") {
      out.push_back({Tok::Arrow, "->", col(start)});
      i += 2;
    } else if (c == '+') {
      out.push_back({Tok::Plus, "+", col(start)});
      ++i;
    } else if (c == ';') {
      out.push_back({Tok::Semi, ";", col(start)});
      ++i;
    } else if (c == ',') {
      out.push_back({Tok::Comma, ",", col(start)});
      ++i;
    } else if (c == '(') {
      out.push_back({Tok::LParen, "(", col(start)});
      ++i;
      if (!out.empty() && out.size() >= 2 && out[out.size() - 2].kind == Tok::Ident &&
          out[out.size() - 2].text == "table") {
        const std::size_t close = line.find(')', i);
        if (close == std::string_view::npos) throw ParseError(lineno, col(start), "unterminated table(...)");
        std::string path(line.substr(i, close - i));
        const auto b = path.find_first_not_of(" \t");
        const auto e = path.find_last_not_of(" \t");
        path = b == std::string::npos ? std::string{} : path.substr(b, e - b + 1);
        out.push_back({Tok::Path, path, col(i)});
        i = close;
      }
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", col(start)});
      ++i;
    } else if (ident_start(c)) {
      while (i < line.size() && ident_char(line[i])) ++i;
      out.push_back({Tok::Ident, std::string(line.substr(start, i - start)), col(start)});
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-') {
      ++i;
      while (i < line.size()) {
        const char d = line[i];
        const bool exp_sign = (d == '-' || d == '+') && (line[i - 1] == 'e' || line[i - 1] == 'E');
        if (std::isdigit(static_cast<unsigned char>(d)) || d == '.' || exp_sign ||
            ((d == 'e' || d == 'E') && i + 1 < line.size() &&
             (std::isdigit(static_cast<unsigned char>(line[i + 1])) || line[i + 1] == '-' || line[i + 1] == '+')))
          ++i;
        else
          break;
      }
      out.push_back({Tok::Number, std::string(line.substr(start, i - start)), col(start)});
    } else {
      throw ParseError(lineno, col(start), std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", col(line.size())});
  return out;
}

struct PendingReaction {
  std::map<int, int> source, product;
  double rate;
  DelayKernel kernel;
};

class LineParser {
 public:
  LineParser(std::vector<Token> toks, int lineno, const std::string& base_dir)
      : toks_(std::move(toks)), line_(lineno), base_dir_(base_dir) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(line_, t.column, msg); }
  const Token& expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail(peek(), "expected " + what + (peek().text.empty() ? "" : ", found '" + peek().text + "'"));
    return next();
  }
  void expect_word(const std::string& word) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || t.text != word) fail(t, "expected '" + word + "'");
    next();
  }
  double number() {
    const Token& t = expect(Tok::Number, "a number");
    auto v = parse_double(t.text);
    if (!v || !std::isfinite(*v)) fail(t, "malformed number '" + t.text + "'");
    return *v;
  }

  std::map<int, int> complex(const std::vector<std::string>& species) {
    std::map<int, int> terms;
    if (peek().kind == Tok::Number && peek().text == "0" &&
        (toks_[pos_ + 1].kind == Tok::Arrow || toks_[pos_ + 1].kind == Tok::BiArrow ||
         toks_[pos_ + 1].kind == Tok::Semi)) {
      next();
      return terms;
    }
    do {
      int coeff = 1;
      if (peek().kind == Tok::Number) {
        const Token& t = next();
        auto v = parse_double(t.text);
        if (!v || *v < 1.0 || *v != std::floor(*v) || *v > 1e6)
          fail(t, "stoichiometric coefficient must be a positive integer");
        coeff = static_cast<int>(*v);
      }
      const Token& name = expect(Tok::Ident, "a species name");
      int idx = -1;
      for (std::size_t i = 0; i < species.size(); ++i)
        if (species[i] == name.text) idx = static_cast<int>(i);
      if (idx < 0) fail(name, "unknown species '" + name.text + "'");
      terms[idx] += coeff;
    } while (accept(Tok::Plus));
    return terms;
  }

  double rate() {
    const Token& at = peek();
    const double r = number();
    if (!(r > 0.0)) fail(at, "rate constant must be positive");
    return r;
  }

  DelayKernel kernel() {
    const Token& head = expect(Tok::Ident, "a delay kernel");
    try {
      if (head.text == "none") return DelayKernel::none();
      if (head.text == "const") {
        expect(Tok::LParen, "'('");
        const double tau = number();
        expect(Tok::RParen, "')'");
        return DelayKernel::constant(tau);
      }
      if (head.text == "uniform") {
        expect(Tok::LParen, "'('");
        const double a = number();
        expect(Tok::Comma, "','");
        const double b = number();
        expect(Tok::RParen, "')'");
        return DelayKernel::uniform(a, b);
      }
      if (head.text == "table") {
        expect(Tok::LParen, "'('");
        const Token& path = expect(Tok::Path, "a file path");
        expect(Tok::RParen, "')'");
        const std::string full = (!path.text.empty() && path.text.front() == '/') ? path.text
                                                                                    : base_dir_ + "/" + path.text;
        return DelayKernel::table_from_file(full, path.text);
      }
    } catch (const std::invalid_argument& e) {
      fail(head, e.what());
    }
    fail(head, "unknown delay kernel '" + head.text + "'");
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
  const std::string& base_dir_;
};

Complex to_complex(const std::map<int, int>& terms, int n) {
  Complex c{Eigen::VectorXi::Zero(n)};
  for (auto [i, k] : terms) c.coeffs[i] = k;
  return c;
}

}  // namespace

ReactionNetwork parse_network(std::string_view text, const std::string& base_dir) {
  std::vector<std::string> species;
  std::vector<PendingReaction> pending;

  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    LineParser p(lex(line, lineno), lineno, base_dir);
    if (p.peek().kind == Tok::End) continue;
    const Token& head = p.expect(Tok::Ident, "'species' or 'reaction'");
    if (head.text == "species") {
      if (p.peek().kind == Tok::End) p.fail(p.peek(), "expected at least one species name");
      while (p.peek().kind != Tok::End) {
        const Token& name = p.expect(Tok::Ident, "a species name");
        for (const auto& s : species)
          if (s == name.text) p.fail(name, "duplicate species '" + name.text + "'");
        species.push_back(name.text);
      }
    } else if (head.text == "reaction") {
      const Token& start = p.peek();
      auto lhs = p.complex(species);
      const bool reversible = p.peek().kind == Tok::BiArrow;
      if (!reversible) p.expect(Tok::Arrow, "'->' or '<->'");
      else p.next();
      auto rhs = p.complex(species);
      if (lhs == rhs) p.fail(start, "reaction source equals its product");
      p.expect(Tok::Semi, "';'");
      p.expect_word("rate");
      const double rate = p.rate();
      std::optional<double> rate2;
      if (p.accept(Tok::Comma)) {
        if (!reversible) p.fail(p.peek(), "rate2 is only allowed with '<->'");
        p.expect_word("rate2");
        rate2 = p.rate();
      }
      p.expect(Tok::Semi, "';'");
      p.expect_word("delay");
      DelayKernel kernel = p.kernel();
      std::optional<DelayKernel> kernel2;
      if (p.accept(Tok::Comma)) {
        if (!reversible) p.fail(p.peek(), "delay2 is only allowed with '<->'");
        p.expect_word("delay2");
        kernel2 = p.kernel();
      }
      p.expect(Tok::End, "end of line");
      pending.push_back({lhs, rhs, rate, kernel});
      if (reversible) pending.push_back({rhs, lhs, rate2.value_or(rate), kernel2.value_or(kernel)});
    } else {
      p.fail(head, "expected 'species' or 'reaction', found '" + head.text + "'");
    }
  }

  if (species.empty()) throw ParseError(1, 1, "no species declared");
  const int n = static_cast<int>(species.size());
  std::vector<Reaction> reactions;
  for (auto& r : pending)
    reactions.push_back({to_complex(r.source, n), to_complex(r.product, n), r.rate, std::move(r.kernel)});
  return ReactionNetwork(std::move(species), std::move(reactions));
}

}  // namespace dcrn
