#ifndef LINSTAB_IO_HPP_
#define LINSTAB_IO_HPP_

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "linstab/classification.hpp"
#include "linstab/dlm.hpp"
#include "linstab/field.hpp"
#include "linstab/linear_transport.hpp"
#include "linstab/stability.hpp"
#include "linstab/systems.hpp"

namespace linstab {

// Shortest round-trip decimal form, independent of the global locale.
std::string format_number(double x);

// Comma-separated file with LF line endings.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
  std::size_t columns_;
};

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

void write_ledger_csv(const std::filesystem::path& path, const DecayLedger& ledger);
void write_hugoniot_csv(const std::filesystem::path& path, const std::vector<HugoniotPoint>& curve);
void write_field_csv(const std::filesystem::path& path, const ScalarField& u);
void write_measure_csv(const std::filesystem::path& path, const ScalarMeasure& m);

nlohmann::json to_json(const ScanReport& r);
nlohmann::json to_json(const Measure<Vec2>& m);
nlohmann::json to_json(const SuperpositionReport& r);
nlohmann::json to_json(const MonotonicityReport& r);
nlohmann::json to_json(const Vec2& v);

}  // namespace linstab

#endif  // LINSTAB_IO_HPP_
