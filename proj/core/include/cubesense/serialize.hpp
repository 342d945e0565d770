#pragma once

#include <string>

#include "cubesense/fourier.hpp"
#include "cubesense/learn.hpp"
#include "cubesense/restrictions.hpp"
#include "cubesense/treewalk.hpp"
#include "cubesense/verify.hpp"

namespace cubesense {

// Compact single-line JSON; identical inputs serialize byte-identically.
std::string to_json(const MomentReport& r);
std::string to_json(const Walk& w);
std::string to_json(const WalkEncoding& e);
std::string to_json(const RestrictionStats& s);
std::string to_json(const BoundCheck& b);
std::string to_json(const EncodingScan& s);
std::string to_json(const TailBoundReport& r);
std::string to_json(const EntropyReport& r);
std::string to_json(const ScanReport& r);

WalkEncoding walk_encoding_from_json(const std::string& text, int n);

}  // namespace cubesense
