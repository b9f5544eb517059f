// CSV persistence for training datasets and evaluation sets.
//
// Dataset header: re_0_0..re_7_7, im_0_0..im_7_7, h0..h5, b, i
// Eval-set header: c_re_*, c_im_*, n_re_*, n_im_*, state_id, class, fidelity
//
// Reals are written in shortest round-trip form, so read(write(x)) == x.
#pragma once

#include <charconv>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "entclass/stategen.hpp"

namespace entclass {

class DatasetFormatError : public std::runtime_error {
 public:
  enum class Kind { BadHeader, ColumnCount, NonNumeric, BadLabel, Io };

  DatasetFormatError(Kind kind, std::size_t line, const std::string& what)
      : std::runtime_error(what), kind_(kind), line_(line) {}

  Kind kind() const { return kind_; }
  /// 1-based line number in the file; 0 when not tied to a line.
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

inline constexpr std::size_t kDatasetColumns = 64 + 64 + 6 + 1 + 1;

std::vector<std::string> dataset_header();
std::vector<std::string> eval_set_header();

void write_dataset(const std::vector<DatasetRow>& rows,
                   const std::filesystem::path& path);
std::vector<DatasetRow> read_dataset(const std::filesystem::path& path);

void write_eval_set(const std::vector<EvalState>& states,
                    const std::filesystem::path& path);
std::vector<EvalState> read_eval_set(const std::filesystem::path& path);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Splits one CSV line on commas (no quoting; none of our fields need it).
std::vector<std::string_view> split_csv(std::string_view line);

/// False unless the whole field parses as a double.
bool parse_double(std::string_view field, double& out);

}  // namespace entclass
