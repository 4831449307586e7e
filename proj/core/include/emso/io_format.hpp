#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "emso/logreal.hpp"

namespace emso {

// Decimal with 15 significant digits; all machine-readable output goes
// through here so results are byte-stable.
std::string fmt_real(double x);

// Flat JSON object writer with insertion order preserved.
class JsonWriter {
 public:
  JsonWriter& field(std::string_view key, double value);
  JsonWriter& field(std::string_view key, std::int64_t value);
  JsonWriter& field(std::string_view key, std::uint64_t value);
  JsonWriter& field(std::string_view key, int value);
  JsonWriter& field(std::string_view key, bool value);
  JsonWriter& field(std::string_view key, std::string_view value);
  JsonWriter& field(std::string_view key, const char* value);
  JsonWriter& field(std::string_view key, const LogReal& value);
  JsonWriter& null_field(std::string_view key);
  JsonWriter& raw_field(std::string_view key, std::string_view json);

  std::string str() const;  // one-line object, newline terminated

 private:
  void key(std::string_view k);
  std::string body_;
};

std::string json_escape(std::string_view s);

}  // namespace emso
