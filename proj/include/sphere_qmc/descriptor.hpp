#ifndef SPHERE_QMC_DESCRIPTOR_HPP
#define SPHERE_QMC_DESCRIPTOR_HPP

#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "error.hpp"
#include "generators.hpp"
#include "points.hpp"

namespace sphere_qmc {

/*
 * Textual generator descriptors:
 *   net:b=2,m=10         digital net, b^m points
 *   seq:b=2,n=1000       first n points of the digital sequence
 *   fib:m=21             Fibonacci lattice, F_m points
 *   rand:n=1000,seed=42  uniform random points (seed defaults to 0)
 */
struct GeneratorDescriptor {
  GeneratorKind kind = GeneratorKind::digital_net;
  int base = 2;
  int level = 0;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
};

namespace detail {

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto *end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw Error(ErrorKind::invalid_input,
                "descriptor: bad value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

}  // namespace detail

inline GeneratorDescriptor parse_descriptor(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorKind::invalid_input, "descriptor: expected 'kind:key=value,...', got '" +
                                              std::string(text) + "'");
  }
  const std::string_view head = text.substr(0, colon);
  std::map<std::string, std::string, std::less<>> fields;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(ErrorKind::invalid_input, "descriptor: malformed field '" + std::string(item) + "'");
    }
    const auto [it, fresh] = fields.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    if (!fresh) throw Error(ErrorKind::invalid_input, "descriptor: duplicate key '" + it->first + "'");
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }

  const auto take = [&](std::string_view key, bool required) -> std::optional<std::string> {
    const auto it = fields.find(key);
    if (it == fields.end()) {
      if (required) {
        throw Error(ErrorKind::invalid_input, "descriptor: missing key '" + std::string(key) + "'");
      }
      return std::nullopt;
    }
    std::string value = it->second;
    fields.erase(it);
    return value;
  };

  GeneratorDescriptor d;
  if (head == "net") {
    d.kind = GeneratorKind::digital_net;
    d.base = detail::parse_number<int>("b", *take("b", true));
    d.level = detail::parse_number<int>("m", *take("m", true));
  } else if (head == "seq") {
    d.kind = GeneratorKind::digital_sequence_prefix;
    d.base = detail::parse_number<int>("b", *take("b", true));
    d.count = detail::parse_number<std::uint64_t>("n", *take("n", true));
  } else if (head == "fib") {
    d.kind = GeneratorKind::fibonacci;
    d.level = detail::parse_number<int>("m", *take("m", true));
  } else if (head == "rand") {
    d.kind = GeneratorKind::random;
    d.count = detail::parse_number<std::uint64_t>("n", *take("n", true));
    if (auto s = take("seed", false)) d.seed = detail::parse_number<std::uint64_t>("seed", *s);
  } else {
    throw Error(ErrorKind::invalid_input, "descriptor: unknown kind '" + std::string(head) + "'");
  }
  detail::require(d.level >= 0, ErrorKind::invalid_input, "descriptor: m must be >= 0");
  if (!fields.empty()) {
    throw Error(ErrorKind::invalid_input, "descriptor: unexpected key '" + fields.begin()->first + "'");
  }
  return d;
}

inline std::string format_descriptor(const GeneratorDescriptor &d) {
  switch (d.kind) {
    case GeneratorKind::digital_net:
      return "net:b=" + std::to_string(d.base) + ",m=" + std::to_string(d.level);
    case GeneratorKind::digital_sequence_prefix:
      return "seq:b=" + std::to_string(d.base) + ",n=" + std::to_string(d.count);
    case GeneratorKind::fibonacci:
      return "fib:m=" + std::to_string(d.level);
    case GeneratorKind::random:
      return "rand:n=" + std::to_string(d.count) + ",seed=" + std::to_string(d.seed);
    case GeneratorKind::custom:
      break;
  }
  throw Error(ErrorKind::invalid_input, "descriptor: custom point sets have no descriptor");
}

inline SquarePointSet generate(const GeneratorDescriptor &d) {
  switch (d.kind) {
    case GeneratorKind::digital_net: return digital_net(d.base, d.level);
    case GeneratorKind::digital_sequence_prefix: return digital_sequence_prefix(d.base, d.count);
    case GeneratorKind::fibonacci: return fibonacci_lattice(d.level);
    case GeneratorKind::random: return random_square_points(d.count, d.seed);
    case GeneratorKind::custom: break;
  }
  throw Error(ErrorKind::invalid_input, "generate: custom point sets cannot be generated");
}

inline SquarePointSet generate(std::string_view descriptor) { return generate(parse_descriptor(descriptor)); }

}  // namespace sphere_qmc

#endif  // SPHERE_QMC_DESCRIPTOR_HPP
