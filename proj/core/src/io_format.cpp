#include "emso/io_format.hpp"

#include <cmath>
#include <cstdio>

#include "emso/parallel.hpp"

namespace emso {

namespace {
int g_threads = 0;
}

void set_thread_count(int t) { g_threads = t < 0 ? 0 : t; }

int thread_count() {
  if (g_threads > 0) return g_threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string fmt_real(double x) {
  if (std::isnan(x)) return "null";
  if (std::isinf(x)) return x > 0 ? "1e999" : "-1e999";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void JsonWriter::key(std::string_view k) {
  if (!body_.empty()) body_ += ", ";
  body_ += '"';
  body_ += json_escape(k);
  body_ += "\": ";
}

JsonWriter& JsonWriter::field(std::string_view k, double v) {
  key(k);
  body_ += fmt_real(v);
  return *this;
}

JsonWriter& JsonWriter::field(std::string_view k, std::int64_t v) {
  key(k);
  body_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::field(std::string_view k, std::uint64_t v) {
  key(k);
  body_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::field(std::string_view k, int v) {
  return field(k, static_cast<std::int64_t>(v));
}

JsonWriter& JsonWriter::field(std::string_view k, bool v) {
  key(k);
  body_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::field(std::string_view k, std::string_view v) {
  key(k);
  body_ += '"';
  body_ += json_escape(v);
  body_ += '"';
  return *this;
}

JsonWriter& JsonWriter::field(std::string_view k, const char* v) {
  return field(k, std::string_view(v));
}

JsonWriter& JsonWriter::field(std::string_view k, const LogReal& v) {
  key(k);
  body_ += "{\"sign\": ";
  body_ += std::to_string(v.sign);
  body_ += ", \"logmag\": ";
  body_ += v.sign == 0 ? "null" : fmt_real(v.logmag);
  body_ += '}';
  return *this;
}

JsonWriter& JsonWriter::null_field(std::string_view k) {
  key(k);
  body_ += "null";
  return *this;
}

JsonWriter& JsonWriter::raw_field(std::string_view k, std::string_view json) {
  key(k);
  body_ += json;
  return *this;
}

std::string JsonWriter::str() const { return "{" + body_ + "}\n"; }

}  // namespace emso
