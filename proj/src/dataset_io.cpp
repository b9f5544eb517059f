#include "entclass/dataset_io.hpp"

#include <array>
#include <fstream>
#include <sstream>

namespace entclass {

namespace {

using Kind = DatasetFormatError::Kind;

void append_matrix_names(std::vector<std::string>& names, std::string_view prefix) {
  for (const char* part : {"re", "im"}) {
    for (int r = 0; r < kDim; ++r)
      for (int c = 0; c < kDim; ++c)
        names.push_back(std::string(prefix) + part + "_" + std::to_string(r) +
                        "_" + std::to_string(c));
  }
}

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DatasetFormatError(Kind::Io, 0, "cannot open " + path.string() +
                                              " for writing");
  }
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DatasetFormatError(Kind::Io, 0, "cannot open " + path.string());
  }
  return in;
}

void check_header(std::istream& in, const std::vector<std::string>& expected,
                  const std::filesystem::path& path) {
  std::string line;
  if (!std::getline(in, line)) {
    throw DatasetFormatError(Kind::BadHeader, 1, path.string() + ": empty file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != join(expected)) {
    throw DatasetFormatError(Kind::BadHeader, 1,
                             path.string() + ":1: unexpected header");
  }
}

std::vector<std::string_view> fields_of(std::string_view line, std::size_t expected,
                                        std::size_t line_no,
                                        const std::filesystem::path& path) {
  auto fields = split_csv(line);
  if (fields.size() != expected) {
    std::ostringstream msg;
    msg << path.string() << ":" << line_no << ": expected " << expected
        << " columns, found " << fields.size();
    throw DatasetFormatError(Kind::ColumnCount, line_no, msg.str());
  }
  return fields;
}

double number_at(std::string_view field, std::size_t line_no, std::size_t col,
                 const std::filesystem::path& path) {
  double v = 0.0;
  if (!parse_double(field, v)) {
    std::ostringstream msg;
    msg << path.string() << ":" << line_no << ": column " << col + 1
        << " is not a number: '" << field << "'";
    throw DatasetFormatError(Kind::NonNumeric, line_no, msg.str());
  }
  return v;
}

void append_matrix(std::vector<std::string>& out, const DensityMatrix& rho) {
  for (int r = 0; r < kDim; ++r)
    for (int c = 0; c < kDim; ++c) out.push_back(format_double(rho(r, c).real()));
  for (int r = 0; r < kDim; ++r)
    for (int c = 0; c < kDim; ++c) out.push_back(format_double(rho(r, c).imag()));
}

DensityMatrix matrix_from_fields(const std::vector<std::string_view>& fields,
                                 std::size_t offset, std::size_t line_no,
                                 const std::filesystem::path& path) {
  Matrix8c m;
  for (int k = 0; k < 64; ++k) {
    const double re = number_at(fields[offset + k], line_no, offset + k, path);
    const double im =
        number_at(fields[offset + 64 + k], line_no, offset + 64 + k, path);
    m(k / 8, k % 8) = Complex(re, im);
  }
  try {
    return DensityMatrix(m);
  } catch (const InvariantError& e) {
    std::ostringstream msg;
    msg << path.string() << ":" << line_no << ": " << e.what();
    throw DatasetFormatError(Kind::NonNumeric, line_no, msg.str());
  }
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

bool parse_double(std::string_view field, double& out) {
  if (field.empty()) return false;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::vector<std::string> dataset_header() {
  std::vector<std::string> names;
  append_matrix_names(names, "");
  for (int k = 0; k < kNumClasses; ++k) names.push_back("h" + std::to_string(k));
  names.push_back("b");
  names.push_back("i");
  return names;
}

std::vector<std::string> eval_set_header() {
  std::vector<std::string> names;
  append_matrix_names(names, "c_");
  append_matrix_names(names, "n_");
  names.push_back("state_id");
  names.push_back("class");
  names.push_back("fidelity");
  return names;
}

void write_dataset(const std::vector<DatasetRow>& rows,
                   const std::filesystem::path& path) {
  auto out = open_out(path);
  out << join(dataset_header()) << '\n';
  std::vector<std::string> fields;
  for (const auto& row : rows) {
    fields.clear();
    for (double v : row.v_re) fields.push_back(format_double(v));
    for (double v : row.v_im) fields.push_back(format_double(v));
    for (int h : row.label.one_hot) fields.push_back(std::to_string(h));
    fields.push_back(std::to_string(row.label.gme_flag));
    fields.push_back(std::to_string(row.label.integer_code));
    out << join(fields) << '\n';
  }
  if (!out) throw DatasetFormatError(Kind::Io, 0, "write failed: " + path.string());
}

std::vector<DatasetRow> read_dataset(const std::filesystem::path& path) {
  auto in = open_in(path);
  check_header(in, dataset_header(), path);
  std::vector<DatasetRow> rows;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = fields_of(line, kDatasetColumns, line_no, path);
    DatasetRow row;
    for (int k = 0; k < 64; ++k) {
      row.v_re[k] = number_at(fields[k], line_no, k, path);
      row.v_im[k] = number_at(fields[64 + k], line_no, 64 + k, path);
    }
    std::array<double, kNumClasses + 2> labels{};
    for (std::size_t k = 0; k < labels.size(); ++k)
      labels[k] = number_at(fields[128 + k], line_no, 128 + k, path);

    const double code = labels[kNumClasses + 1];
    if (code != static_cast<int>(code) || code < 0 || code >= kNumClasses) {
      throw DatasetFormatError(Kind::BadLabel, line_no,
                               path.string() + ":" + std::to_string(line_no) +
                                   ": class code out of range");
    }
    row.label = encode_labels(class_from_code(static_cast<int>(code)));
    for (int k = 0; k < kNumClasses; ++k) {
      if (labels[k] != row.label.one_hot[k]) {
        throw DatasetFormatError(Kind::BadLabel, line_no,
                                 path.string() + ":" + std::to_string(line_no) +
                                     ": one-hot label disagrees with class code");
      }
    }
    if (labels[kNumClasses] != row.label.gme_flag) {
      throw DatasetFormatError(Kind::BadLabel, line_no,
                               path.string() + ":" + std::to_string(line_no) +
                                   ": GME flag disagrees with class code");
    }
    rows.push_back(row);
  }
  return rows;
}

void write_eval_set(const std::vector<EvalState>& states,
                    const std::filesystem::path& path) {
  auto out = open_out(path);
  out << join(eval_set_header()) << '\n';
  std::vector<std::string> fields;
  for (const auto& s : states) {
    fields.clear();
    append_matrix(fields, s.clean);
    append_matrix(fields, s.noisy);
    fields.push_back(s.state_id);
    fields.emplace_back(class_name(s.slocc_class));
    fields.push_back(format_double(s.fidelity));
    out << join(fields) << '\n';
  }
  if (!out) throw DatasetFormatError(Kind::Io, 0, "write failed: " + path.string());
}

std::vector<EvalState> read_eval_set(const std::filesystem::path& path) {
  auto in = open_in(path);
  const auto header = eval_set_header();
  check_header(in, header, path);
  std::vector<EvalState> states;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = fields_of(line, header.size(), line_no, path);
    DensityMatrix clean = matrix_from_fields(fields, 0, line_no, path);
    DensityMatrix noisy = matrix_from_fields(fields, 128, line_no, path);
    const auto cls = class_from_name(fields[257]);
    if (!cls) {
      throw DatasetFormatError(Kind::BadLabel, line_no,
                               path.string() + ":" + std::to_string(line_no) +
                                   ": unknown class '" + std::string(fields[257]) +
                                   "'");
    }
    const double fid = number_at(fields[258], line_no, 258, path);
    states.push_back(EvalState{std::string(fields[256]), std::move(clean),
                               std::move(noisy), *cls, fid});
  }
  return states;
}

}  // namespace entclass
