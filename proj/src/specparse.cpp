#include "polproj/specparse.hpp"

#include <map>

namespace polproj::cli {

namespace {

[[noreturn]] void parse_error(const std::string& text, size_t pos, const std::string& msg) {
  raise(Errc::ParseError, msg + " at position " + std::to_string(pos) + " in \"" + text + "\"");
}

size_t skip_ws(const std::string& s, size_t p) {
  while (p < s.size() && isspace(static_cast<unsigned char>(s[p]))) ++p;
  return p;
}

long read_int(const std::string& s, size_t& p) {
  size_t start = p;
  while (p < s.size() && isdigit(static_cast<unsigned char>(s[p]))) ++p;
  if (p == start) parse_error(s, start, "expected an integer");
  return std::stol(s.substr(start, p - start));
}

// q must be a prime power; returns (p, k)
std::pair<unsigned, unsigned> factor_prime_power(long q, const std::string& text) {
  if (q < 2) raise(Errc::SemanticError, "q must be >= 2 in \"" + text + "\"");
  for (long p = 2; p <= q; ++p) {
    if (q % p) continue;
    long rest = q;
    unsigned k = 0;
    while (rest % p == 0) { rest /= p; ++k; }
    if (rest != 1)
      raise(Errc::SemanticError, "q = " + std::to_string(q) + " is not a prime power");
    return {static_cast<unsigned>(p), k};
  }
  raise(Errc::SemanticError, "q must be a prime power");
}

} // namespace

ParsedSpec parse_spec(const std::string& text, unsigned field_bound) {
  size_t p = skip_ws(text, 0);
  forms::Kind kind;
  if (text.compare(p, 2, "Sp") == 0) {
    kind = forms::Kind::Symplectic;
    p += 2;
  } else if (text.compare(p, 1, "O") == 0) {
    kind = forms::Kind::Quadratic;
    p += 1;
  } else if (text.compare(p, 1, "U") == 0) {
    kind = forms::Kind::Hermitian;
    p += 1;
  } else {
    parse_error(text, p, "expected kind Sp, O or U");
  }
  if (p >= text.size() || text[p] != '(') parse_error(text, p, "expected '('");
  ++p;
  std::map<std::string, long> kv;
  while (true) {
    p = skip_ws(text, p);
    size_t ks = p;
    while (p < text.size() && isalpha(static_cast<unsigned char>(text[p]))) ++p;
    std::string key = text.substr(ks, p - ks);
    if (key != "n" && key != "q" && key != "corank")
      parse_error(text, ks, "expected key n, q or corank");
    if (p >= text.size() || text[p] != '=') parse_error(text, p, "expected '='");
    ++p;
    long val = read_int(text, p);
    if (kv.count(key)) parse_error(text, ks, "duplicate key " + key);
    kv[key] = val;
    p = skip_ws(text, p);
    if (p < text.size() && text[p] == ',') {
      ++p;
      continue;
    }
    if (p < text.size() && text[p] == ')') {
      ++p;
      break;
    }
    parse_error(text, p, "expected ',' or ')'");
  }
  if (!kv.count("n")) raise(Errc::SemanticError, "missing n in \"" + text + "\"");
  if (!kv.count("q")) raise(Errc::SemanticError, "missing q in \"" + text + "\"");
  long n = kv["n"], q = kv["q"];
  if (n < 1) raise(Errc::SemanticError, "rank n must be >= 1");

  int corank = 0;
  switch (kind) {
    case forms::Kind::Symplectic:
      if (kv.count("corank"))
        raise(Errc::SemanticError, "symplectic spaces take no corank");
      break;
    case forms::Kind::Quadratic:
      if (!kv.count("corank"))
        raise(Errc::SemanticError, "orthogonal spaces need corank=1 or corank=2");
      corank = static_cast<int>(kv["corank"]);
      if (corank == 0)
        raise(Errc::SemanticError, "corank=0 quadric is top-thin (type D), out of scope");
      if (corank != 1 && corank != 2)
        raise(Errc::SemanticError, "orthogonal corank must be 1 or 2");
      break;
    case forms::Kind::Hermitian:
      corank = kv.count("corank") ? static_cast<int>(kv["corank"]) : 0;
      if (corank != 0 && corank != 1)
        raise(Errc::SemanticError, "Hermitian corank must be 0 or 1");
      break;
  }

  auto [pp, kk] = factor_prime_power(q, text);
  gf::FieldPtr F = gf::Field::create(pp, kind == forms::Kind::Hermitian ? 2 * kk : kk,
                                     field_bound);

  ParsedSpec out{forms::FormSpec::make(kind, F, static_cast<int>(n), corank), std::nullopt};

  p = skip_ws(text, p);
  if (p < text.size()) {
    ResidueSel sel;
    if (text.compare(p, 5, "point") == 0) {
      sel.what = ResidueSel::What::Point;
      sel.d = 0;
      p += 5;
    } else if (text.compare(p, 4, "line") == 0) {
      sel.what = ResidueSel::What::Line;
      sel.d = 1;
      p += 4;
    } else if (text.compare(p, 11, "subspace(d=") == 0) {
      sel.what = ResidueSel::What::Subspace;
      p += 11;
      sel.d = static_cast<int>(read_int(text, p));
      if (p >= text.size() || text[p] != ')') parse_error(text, p, "expected ')'");
      ++p;
    } else if (text.compare(p, 3, "max") == 0) {
      sel.what = ResidueSel::What::Max;
      sel.d = static_cast<int>(n) - 1;
      p += 3;
    } else {
      parse_error(text, p, "expected residue: point, line, subspace(d=..) or max");
    }
    if (p < text.size() && text[p] == ':') {
      ++p;
      if (text.compare(p, 5, "upper") == 0) {
        sel.side = polar::Side::Upper;
        p += 5;
      } else if (text.compare(p, 5, "lower") == 0) {
        sel.side = polar::Side::Lower;
        p += 5;
      } else {
        parse_error(text, p, "expected side upper or lower");
      }
      sel.side_given = true;
    } else {
      sel.side = sel.what == ResidueSel::What::Max ? polar::Side::Lower : polar::Side::Upper;
    }
    p = skip_ws(text, p);
    if (p != text.size()) parse_error(text, p, "trailing input");
    if (sel.d < 0 || sel.d > n - 1)
      raise(Errc::SemanticError, "residue dimension out of range");
    out.residue = sel;
  }
  return out;
}

std::string render_spec(const forms::FormSpec& S) { return S.render(); }

std::string render_residue(const ResidueSel& sel) {
  std::string s;
  switch (sel.what) {
    case ResidueSel::What::Point: s = "point"; break;
    case ResidueSel::What::Line: s = "line"; break;
    case ResidueSel::What::Subspace: s = "subspace(d=" + std::to_string(sel.d) + ")"; break;
    case ResidueSel::What::Max: s = "max"; break;
  }
  s += sel.side == polar::Side::Upper ? ":upper" : ":lower";
  return s;
}

std::pair<linalg::Subspace, polar::Side> resolve_residue(polar::PolarSpace& P,
                                                         const ResidueSel& sel) {
  int d = sel.what == ResidueSel::What::Max ? P.rank() - 1 : sel.d;
  if (d < 0 || d > P.rank() - 1) raise(Errc::BadDimension, "no singular subspaces of that dimension");
  const auto& list = P.singular_subspaces(d);
  if (list.empty()) raise(Errc::Internal, "no singular subspaces enumerated");
  return {list[0], sel.side};
}

} // namespace polproj::cli
