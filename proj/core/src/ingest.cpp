#include "cgent/ingest.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "cgent/error.hpp"

namespace cgent {

namespace {

constexpr std::array<std::string_view, 9> kRequiredKeys = {
    "variable_pair", "step_mm",   "f1_mm",  "f2_mm",
    "f3_mm",         "lambda_mm", "s_x_mm", "s_p_mm",
    "micrometer_step_mm"};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view text, std::string_view key, int line) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw ParseError("bad number for '" + std::string(key) + "': '" + std::string(text) + "'",
                     line);
  return v;
}

long long parse_integer(std::string_view text, int line) {
  long long v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw ParseError("bad integer '" + std::string(text) + "'", line);
  return v;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

struct HeaderValue {
  std::string text;
  int line;
};

}  // namespace

void OpticalGeometry::validate() const {
  const std::array<std::pair<const char*, double>, 7> fields = {{
      {"f1_mm", f1_mm},
      {"f2_mm", f2_mm},
      {"f3_mm", f3_mm},
      {"lambda_mm", lambda_mm},
      {"s_x_mm", s_x_mm},
      {"s_p_mm", s_p_mm},
      {"micrometer_step_mm", micrometer_step_mm},
  }};
  for (const auto& [name, v] : fields) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvalidParameter(std::string("geometry field ") + name + " must be positive");
  }
}

double detector_to_source_scale(const OpticalGeometry& g, VariablePair pair) {
  g.validate();
  if (pair == VariablePair::Position) return 2.0 * g.s_x_mm * (g.f1_mm / g.f2_mm);
  return 2.0 * g.s_p_mm * (2.0 * std::numbers::pi / (g.f3_mm * g.lambda_mm));
}

JointCounts::JointCounts(VariablePair pair, double step_mm, OpticalGeometry geometry, int i0,
                         int j0, std::size_t rows, std::size_t cols,
                         std::vector<std::int64_t> counts)
    : pair_(pair),
      step_mm_(step_mm),
      geometry_(geometry),
      i0_(i0),
      j0_(j0),
      rows_(rows),
      cols_(cols),
      counts_(std::move(counts)) {
  geometry_.validate();
  if (!(step_mm_ > 0.0) || !std::isfinite(step_mm_))
    throw InvariantViolation("scan step must be positive");
  if (rows_ == 0 || cols_ == 0) throw InvariantViolation("joint counts array is empty");
  if (counts_.size() != rows_ * cols_)
    throw InvariantViolation("joint counts array is not rectangular");
  for (auto n : counts_) {
    if (n < 0) throw InvariantViolation("joint counts must be nonnegative");
  }
}

JointCounts JointCounts::centered(VariablePair pair, double step_mm, OpticalGeometry geometry,
                                  std::size_t rows, std::size_t cols,
                                  std::vector<std::int64_t> counts) {
  return JointCounts(pair, step_mm, geometry, -static_cast<int>(rows / 2),
                     -static_cast<int>(cols / 2), rows, cols, std::move(counts));
}

std::int64_t JointCounts::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

JointCounts JointCounts::with_counts(std::vector<std::int64_t> counts) const {
  return JointCounts(pair_, step_mm_, geometry_, i0_, j0_, rows_, cols_, std::move(counts));
}

JointCounts read_joint_counts(std::istream& in) {
  std::map<std::string, HeaderValue, std::less<>> header;
  std::vector<std::int64_t> counts;
  std::size_t cols = 0;
  std::size_t rows = 0;
  int first_data_line = 0;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (rows > 0) throw ParseError("header line after count rows", line_no);
      std::string_view body = trim(line.substr(1));
      if (body.find('=') == std::string_view::npos) continue;  // plain comment
      while (!body.empty()) {
        const auto comma = body.find(',');
        const std::string_view item = trim(body.substr(0, comma));
        body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string_view::npos)
          throw ParseError("expected key=value, got '" + std::string(item) + "'", line_no);
        std::string key(trim(item.substr(0, eq)));
        std::string value(trim(item.substr(eq + 1)));
        if (header.count(key)) throw ParseError("duplicate key '" + key + "'", line_no);
        header.emplace(std::move(key), HeaderValue{std::move(value), line_no});
      }
      continue;
    }

    if (rows == 0) first_data_line = line_no;
    std::size_t n_in_row = 0;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      const std::string_view cell = trim(rest.substr(0, comma));
      const long long v = parse_integer(cell, line_no);
      if (v < 0) throw ParseError("negative count " + std::to_string(v), line_no);
      counts.push_back(v);
      ++n_in_row;
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (rows == 0) {
      cols = n_in_row;
    } else if (n_in_row != cols) {
      throw ParseError("ragged row: expected " + std::to_string(cols) + " values, got " +
                           std::to_string(n_in_row),
                       line_no);
    }
    ++rows;
  }

  for (auto key : kRequiredKeys) {
    if (!header.count(key))
      throw ParseError("missing metadata key '" + std::string(key) + "'", line_no);
  }
  if (rows == 0) throw ParseError("no count rows", line_no);

  auto number = [&](std::string_view key) {
    const auto& hv = header.find(key)->second;
    return parse_double(hv.text, key, hv.line);
  };
  auto index = [&](std::string_view key, int fallback) {
    auto it = header.find(key);
    if (it == header.end()) return fallback;
    return static_cast<int>(parse_integer(it->second.text, it->second.line));
  };

  const auto& vp = header.find("variable_pair")->second;
  VariablePair pair;
  if (vp.text == "position") {
    pair = VariablePair::Position;
  } else if (vp.text == "momentum") {
    pair = VariablePair::Momentum;
  } else {
    throw ParseError("unknown variable_pair '" + vp.text + "'", vp.line);
  }

  OpticalGeometry geom;
  geom.f1_mm = number("f1_mm");
  geom.f2_mm = number("f2_mm");
  geom.f3_mm = number("f3_mm");
  geom.lambda_mm = number("lambda_mm");
  geom.s_x_mm = number("s_x_mm");
  geom.s_p_mm = number("s_p_mm");
  geom.micrometer_step_mm = number("micrometer_step_mm");
  const double step = number("step_mm");
  const int i0 = index("i0", -static_cast<int>(rows / 2));
  const int j0 = index("j0", -static_cast<int>(cols / 2));

  try {
    return JointCounts(pair, step, geom, i0, j0, rows, cols, std::move(counts));
  } catch (const Error& e) {
    throw ParseError(e.what(), first_data_line);
  }
}

JointCounts load_joint_counts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open joint counts file " + path.string());
  return read_joint_counts(in);
}

void write_joint_counts(std::ostream& out, const JointCounts& jc) {
  const auto& g = jc.geometry();
  out << "# variable_pair=" << to_string(jc.variable_pair()) << '\n'
      << "# step_mm=" << format_double(jc.step_mm()) << '\n'
      << "# f1_mm=" << format_double(g.f1_mm) << '\n'
      << "# f2_mm=" << format_double(g.f2_mm) << '\n'
      << "# f3_mm=" << format_double(g.f3_mm) << '\n'
      << "# lambda_mm=" << format_double(g.lambda_mm) << '\n'
      << "# s_x_mm=" << format_double(g.s_x_mm) << '\n'
      << "# s_p_mm=" << format_double(g.s_p_mm) << '\n'
      << "# micrometer_step_mm=" << format_double(g.micrometer_step_mm) << '\n'
      << "# i0=" << jc.i0() << ",j0=" << jc.j0() << '\n';
  for (std::size_t r = 0; r < jc.rows(); ++r) {
    for (std::size_t c = 0; c < jc.cols(); ++c) {
      if (c) out << ',';
      out << jc.at(r, c);
    }
    out << '\n';
  }
}

void save_joint_counts(const std::filesystem::path& path, const JointCounts& jc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  write_joint_counts(out, jc);
  if (!out) throw ConfigError("write failed for " + path.string());
}

CountHistogram global_marginal(const JointCounts& jc, Sign sign) {
  const int i_min = jc.i0();
  const int i_max = jc.i0() + static_cast<int>(jc.rows()) - 1;
  const int j_min = jc.j0();
  const int j_max = jc.j0() + static_cast<int>(jc.cols()) - 1;
  const bool plus = sign == Sign::Plus;
  const int k_min = plus ? i_min + j_min : i_min - j_max;
  const int k_max = plus ? i_max + j_max : i_max - j_min;

  BinGrid grid(detector_to_source_scale(jc.geometry(), jc.variable_pair()), k_min, k_max);
  std::vector<std::int64_t> hist(grid.size(), 0);
  for (std::size_t r = 0; r < jc.rows(); ++r) {
    const int i = i_min + static_cast<int>(r);
    for (std::size_t c = 0; c < jc.cols(); ++c) {
      const int j = j_min + static_cast<int>(c);
      hist[grid.offset(plus ? i + j : i - j)] += jc.at(r, c);
    }
  }
  return CountHistogram(grid, std::move(hist));
}

CountHistogram rebin_marginal(const CountHistogram& h, int factor) { return rebin(h, factor); }

}  // namespace cgent
