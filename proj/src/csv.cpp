#include "periodkit/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "periodkit/errors.hpp"

namespace periodkit {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Signal read_signal_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  Signal out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // tolerate trailing CR and surrounding blanks
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    if (line[start] == '+') ++start;  // from_chars rejects an explicit plus
    double v = 0.0;
    auto res = std::from_chars(line.data() + start, line.data() + line.size(), v);
    if (res.ec != std::errc() || res.ptr != line.data() + line.size())
      throw Error(Errc::IoError,
                  path.string() + ":" + std::to_string(lineno) + ": not a number: " + line);
    if (!std::isfinite(v))
      throw Error(Errc::IoError, path.string() + ": non-finite sample");
    out.push_back(v);
  }
  if (out.empty()) throw Error(Errc::IoError, path.string() + ": no samples");
  return out;
}

void write_signal_csv(const std::filesystem::path& path, std::span<const double> samples,
                      const std::string& comment) {
  std::string body;
  body.reserve(samples.size() * 20 + comment.size() + 4);
  if (!comment.empty()) {
    body += "# ";
    body += comment;
    body += '\n';
  }
  for (double v : samples) {
    body += format_double(v);
    body += '\n';
  }
  write_text_atomic(path, body);
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path dir = path.parent_path();
  std::filesystem::path tmp =
      (dir.empty() ? std::filesystem::path(".") : dir) /
      (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoError, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(Errc::IoError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(Errc::IoError, "rename to " + path.string() + " failed: " + ec.message());
}

std::string CsvTable::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  return out.str();
}

void CsvTable::write(const std::filesystem::path& path) const {
  write_text_atomic(path, to_string());
}

}  // namespace periodkit
