#include "linstab/io.hpp"

#include <charconv>
#include <cmath>

namespace linstab {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(open_out(path)), columns_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw InvalidArgument("csv row has the wrong number of cells");
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) out_ << ',';
    out_ << cells[k];
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  row(cells);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

void write_ledger_csv(const std::filesystem::path& path, const DecayLedger& ledger) {
  CsvWriter w(path, {"t", "l1", "D2", "D3", "K"});
  for (std::size_t k = 0; k < ledger.times.size(); ++k) {
    const double kk = ledger.k.empty() ? NAN : ledger.k[k];
    w.row({ledger.times[k], ledger.l1[k], ledger.d2[k], ledger.d3[k], kk});
  }
}

void write_hugoniot_csv(const std::filesystem::path& path, const std::vector<HugoniotPoint>& curve) {
  CsvWriter w(path, {"eps", "u1", "u2", "speed", "lax", "residual"});
  for (const auto& p : curve) {
    w.row({p.eps, p.u_plus(0), p.u_plus(1), p.speed, p.lax_admissible ? 1.0 : 0.0, p.residual});
  }
}

void write_field_csv(const std::filesystem::path& path, const ScalarField& u) {
  CsvWriter w(path, {"x", "left", "right"});
  const auto& b = u.breakpoints();
  for (std::size_t k = 0; k < b.size(); ++k) w.row({b[k], u.values()[k], u.values()[k + 1]});
}

void write_measure_csv(const std::filesystem::path& path, const ScalarMeasure& m) {
  CsvWriter w(path, {"kind", "x", "left", "right_or_mass"});
  const auto& b = m.bv.breakpoints();
  for (std::size_t k = 0; k < b.size(); ++k) {
    w.row(std::vector<std::string>{"jump", format_number(b[k]), format_number(m.bv.values()[k]),
                                   format_number(m.bv.values()[k + 1])});
  }
  for (const auto& a : m.atoms) {
    w.row(std::vector<std::string>{"atom", format_number(a.x), "", format_number(a.mass)});
  }
}

nlohmann::json to_json(const Vec2& v) { return nlohmann::json::array({v(0), v(1)}); }

nlohmann::json to_json(const ScanReport& r) {
  nlohmann::json j;
  j["counts"] = {{"L", r.count(JumpKind::kCompressive)},
                 {"S", r.count(JumpKind::kSlowUndercompressive)},
                 {"F", r.count(JumpKind::kFastUndercompressive)},
                 {"R", r.count(JumpKind::kRarefaction)}};
  j["degenerate"] = r.degenerate;
  j["rarefaction_violations"] = r.rarefaction_violations;
  j["worst_rarefaction_margin"] = r.worst_rarefaction_margin;
  j["sampled_times"] = r.sampled_times;
  auto& recs = j["rarefaction_records"] = nlohmann::json::array();
  for (const auto& rec : r.rarefaction_records) {
    recs.push_back({{"t", rec.t},
                    {"x", rec.x},
                    {"a_minus", rec.a_minus},
                    {"a_plus", rec.a_plus},
                    {"lambda", rec.lambda},
                    {"family", rec.family},
                    {"margin", rec.cls.margin}});
  }
  return j;
}

nlohmann::json to_json(const Measure<Vec2>& m) {
  nlohmann::json j;
  j["density"] = "zero";
  auto& atoms = j["atoms"] = nlohmann::json::array();
  for (const auto& a : m.atoms) atoms.push_back({{"x", a.x}, {"mass", to_json(a.mass)}});
  return j;
}

nlohmann::json to_json(const SuperpositionReport& r) {
  return {{"u_l", to_json(r.triple.ul)},
          {"u_m", to_json(r.triple.um)},
          {"u_r", to_json(r.triple.ur)},
          {"lambda", r.triple.lambda},
          {"left_residual", r.left_residual},
          {"right_residual", r.right_residual},
          {"composite", to_json(r.composite)},
          {"composite_residual", r.composite_residual}};
}

nlohmann::json to_json(const MonotonicityReport& r) {
  return {{"sign", r.sign},
          {"sign_violations", r.sign_violations},
          {"worst_margin", r.worst_margin},
          {"lax_checks", r.lax_checks},
          {"lax_violations", r.lax_violations},
          {"worst_lax_margin", r.worst_lax_margin}};
}

}  // namespace linstab
