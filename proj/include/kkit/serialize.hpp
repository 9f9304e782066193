/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The kkit Authors
 */

#ifndef KKIT_SERIALIZE_HPP
#define KKIT_SERIALIZE_HPP

#include <string>
#include <string_view>

#include <json.hpp>

#include "kkit/reduce.hpp"
#include "kkit/search.hpp"

namespace kkit {

using json = nlohmann::ordered_json;

// Every exact number is written as a dyadic string "m*2^e"; intervals are
// [lo, hi] pairs and boxes are arrays of pairs.
json to_json(const Dyadic& d);
json to_json(const Interval& x);
json to_json(const Box& b);

Dyadic dyadic_from_json(const json& j);
Interval interval_from_json(const json& j);
Box box_from_json(const json& j, const Shape& shape);

json config_json(const SearchConfig& cfg);

/// system holds the canonical text of a KhovanskiiSystem or, for a
/// GenExpSystem, an object with its shape and monomials.
json certificate_json(const Certificate& c);
/// Inverse of certificate_json. Throws FormatError on a malformed document
/// and ParseError on a malformed system text.
Certificate certificate_from_json(const json& j);

json report_json(const SolveReport& r, const SearchConfig& cfg);
json report_json(const SatReport& r, const SearchConfig& cfg);
json reduced_json(const ReducedSystem& r);

/// Box text: a JSON array of [lo, hi] pairs, or one bare pair for n = 1.
/// Endpoints may be dyadic strings or decimal/rational literals (quoted or
/// not); inexact ones are rounded outward to prec bits. Throws FormatError.
Box parse_box(std::string_view text, const Shape& shape, Precision prec = 128);

/// Pretty-printed with a trailing newline.
std::string dump(const json& j);

} // namespace kkit

#endif
