#include <cctype>
#include <charconv>
#include <sstream>

#include "rscensus/error.hpp"
#include "rscensus/word.hpp"

namespace rsc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Exponent parse_exponent(std::string_view s, std::string_view whole) {
  s = trim(s);
  Exponent value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, "bad exponent in '" + std::string(whole) + "'");
  }
  return value;
}

Word parse_tuple(std::string_view text) {
  std::vector<Exponent> tuple;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    tuple.push_back(parse_exponent(rest.substr(0, comma), text));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (tuple.size() % 2 != 0) {
    throw Error(ErrorCode::ParseError, "odd-length exponent tuple '" + std::string(text) + "'");
  }
  return Word::from_tuple(tuple);
}

Word parse_letters(std::string_view text) {
  // Collect generator runs, merging repeated letters, then pair them up.
  std::vector<std::pair<char, Exponent>> runs;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    const char letter = token[0];
    if (letter != 'R' && letter != 'S') {
      throw Error(ErrorCode::ParseError, "unknown generator in '" + token + "'");
    }
    Exponent e = 1;
    if (token.size() > 1) {
      if (token[1] != '^') throw Error(ErrorCode::ParseError, "expected '^' in '" + token + "'");
      e = parse_exponent(std::string_view(token).substr(2), text);
    }
    if (!runs.empty() && runs.back().first == letter) {
      runs.back().second += e;
    } else {
      runs.emplace_back(letter, e);
    }
  }
  if (runs.empty()) throw Error(ErrorCode::ParseError, "empty word");

  std::vector<Exponent> betas, alphas;
  if (runs.front().first == 'S') betas.push_back(0);
  for (const auto& [letter, e] : runs) (letter == 'R' ? betas : alphas).push_back(e);
  if (alphas.size() < betas.size()) alphas.push_back(0);
  return Word(std::move(betas), std::move(alphas));
}

}  // namespace

std::string format_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.k(); ++i) {
    if (i > 0) out += ' ';
    out += "R^" + std::to_string(w.beta(i)) + " S^" + std::to_string(w.alpha(i));
  }
  return out;
}

std::string format_tuple(const Word& w) {
  std::string out;
  for (Exponent e : w.tuple()) {
    if (!out.empty()) out += ',';
    out += std::to_string(e);
  }
  return out;
}

Word parse_word(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty word");
  if (text.find_first_of("RS") != std::string_view::npos) return parse_letters(text);
  return parse_tuple(text);
}

GeneratorPair GeneratorPair::parse(std::string_view text) {
  std::vector<Integer> values;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    std::string field(trim(rest.substr(0, comma)));
    Integer v;
    if (field.empty() || v.set_str(field, 10) != 0) {
      throw Error(ErrorCode::ParseError, "bad generator field in '" + std::string(text) + "'");
    }
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (values.size() != 4) {
    throw Error(ErrorCode::ParseError, "generators take four values a,u,v,b");
  }
  GeneratorPair g{values[0], values[1], values[2], values[3]};
  g.validate();
  return g;
}

}  // namespace rsc
