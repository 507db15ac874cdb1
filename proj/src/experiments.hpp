#ifndef LINSTAB_SRC_EXPERIMENTS_HPP_
#define LINSTAB_SRC_EXPERIMENTS_HPP_

#include <filesystem>
#include <string>

#include "linstab/harness.hpp"

namespace linstab::detail {

// Kind-specific validation failure anchored at `key`.
class KindError : public Error {
 public:
  KindError(const std::string& what, std::string k) : Error(what), key(std::move(k)) {}
  std::string key;
};

struct Context {
  const Scenario& s;
  std::filesystem::path out;
  RunReport& rep;
  SeedTree seeds;

  void check(const std::string& name, bool passed, double value, double bound,
             const std::string& detail = {});
  std::filesystem::path artifact(const std::string& file);
};

void validate_kind(const Scenario& s);
void run_kind(Context& ctx);

}  // namespace linstab::detail

#endif  // LINSTAB_SRC_EXPERIMENTS_HPP_
