// Copyright 2026 The fconn authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fconn/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "fconn/errors.hpp"

namespace fconn {

namespace {

constexpr char kMagic[4] = {'F', 'C', 'N', '1'};

static_assert(std::numeric_limits<double>::is_iec559, "IEEE-754 doubles required");

void put_u32_le(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32_le(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_fcn1(const std::filesystem::path& path, const Matrix& values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
  out.write(kMagic, 4);
  put_u32_le(out, static_cast<std::uint32_t>(values.rows()));
  put_u32_le(out, static_cast<std::uint32_t>(values.cols()));
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(sizeof(double)) * values.size());
  } else {
    for (Index i = 0; i < values.size(); ++i) {
      std::uint64_t bits;
      std::memcpy(&bits, values.data() + i, sizeof(bits));
      unsigned char b[8];
      for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>((bits >> (8 * k)) & 0xff);
      out.write(reinterpret_cast<const char*>(b), 8);
    }
  }
  if (!out) throw ValidationError("short write to '" + path.string() + "'");
}

Matrix read_fcn1(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw ValidationError("'" + path.string() + "' is not an FCN1 matrix file");
  }
  const std::uint32_t rows = get_u32_le(in);
  const std::uint32_t cols = get_u32_le(in);
  if (!in) throw ValidationError("truncated header in '" + path.string() + "'");
  Matrix values(static_cast<Index>(rows), static_cast<Index>(cols));
  if constexpr (std::endian::native == std::endian::little) {
    in.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(sizeof(double)) * values.size());
  } else {
    for (Index i = 0; i < values.size(); ++i) {
      unsigned char b[8];
      in.read(reinterpret_cast<char*>(b), 8);
      std::uint64_t bits = 0;
      for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(b[k]) << (8 * k);
      std::memcpy(values.data() + i, &bits, sizeof(bits));
    }
  }
  if (!in) throw ValidationError("truncated data in '" + path.string() + "'");
  return values;
}

void write_csv(const std::filesystem::path& path, const Matrix& values) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
  char buf[64];
  for (Index r = 0; r < values.rows(); ++r) {
    for (Index c = 0; c < values.cols(); ++c) {
      // 17 significant digits round-trip any double exactly.
      std::snprintf(buf, sizeof(buf), "%.17g", values(r, c));
      if (c > 0) out << ',';
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw ValidationError("short write to '" + path.string() + "'");
}

Matrix read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.c_str();
    while (true) {
      char* end = nullptr;
      const double v = std::strtod(p, &end);
      if (end == p) throw ValidationError("malformed number in '" + path.string() + "'");
      row.push_back(v);
      p = end;
      while (*p == ' ' || *p == '\t') ++p;
      if (*p == ',') {
        ++p;
      } else if (*p == '\0' || *p == '\r') {
        break;
      } else {
        throw ValidationError("unexpected character in '" + path.string() + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ValidationError("ragged rows in '" + path.string() + "'");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError("'" + path.string() + "' contains no data");
  Matrix values(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index r = 0; r < values.rows(); ++r) {
    for (Index c = 0; c < values.cols(); ++c) {
      values(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
  }
  return values;
}

nlohmann::json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("failed to parse '" + path.string() + "': " + e.what());
  }
}

}  // namespace

void write_matrix(const std::filesystem::path& path, const Matrix& values, MatrixFormat format) {
  if (format == MatrixFormat::Fcn1) {
    write_fcn1(path, values);
  } else {
    write_csv(path, values);
  }
}

Matrix read_matrix(const std::filesystem::path& path, MatrixFormat format) {
  return format == MatrixFormat::Fcn1 ? read_fcn1(path) : read_csv(path);
}

void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
  validate(manifest);
  nlohmann::json doc;
  doc["subjects"] = nlohmann::json::array();
  for (const SubjectFileRef& s : manifest.subjects) {
    doc["subjects"].push_back(
        {{"id", s.id}, {"path", s.path}, {"format", format_name(s.format)}});
  }
  doc["voxel_ids"] = manifest.voxel_ids;
  doc["axis"] = {{"kind", axis_kind_name(manifest.axis.kind)},
                 {"positions", manifest.axis.positions},
                 {"name", manifest.axis.name}};
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
  out << doc.dump(2) << '\n';
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
  const nlohmann::json doc = parse_json_file(path);
  DatasetManifest manifest;
  try {
    for (const auto& s : doc.at("subjects")) {
      SubjectFileRef ref;
      ref.id = s.at("id").is_string() ? s.at("id").get<std::string>()
                                      : s.at("id").dump();
      ref.path = s.at("path").get<std::string>();
      ref.format = parse_format(s.at("format").get<std::string>());
      manifest.subjects.push_back(std::move(ref));
    }
    for (const auto& v : doc.at("voxel_ids")) {
      manifest.voxel_ids.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
    const auto& axis = doc.at("axis");
    manifest.axis.kind = parse_axis_kind(axis.at("kind").get<std::string>());
    manifest.axis.positions = axis.at("positions").get<std::vector<double>>();
    manifest.axis.name = axis.value("name", axis_kind_name(manifest.axis.kind));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("manifest '" + path.string() + "': " + e.what());
  }
  validate(manifest);
  return manifest;
}

std::vector<SubjectRecord> load_dataset(const DatasetManifest& manifest,
                                        const std::filesystem::path& base_dir) {
  validate(manifest);
  std::vector<SubjectRecord> records;
  records.reserve(manifest.subjects.size());
  for (const SubjectFileRef& ref : manifest.subjects) {
    std::filesystem::path file(ref.path);
    if (file.is_relative()) file = base_dir / file;
    if (!std::filesystem::exists(file)) {
      throw ValidationError("subject '" + ref.id + "': file '" + file.string() + "' does not exist");
    }
    SubjectRecord record;
    record.subject_id = ref.id;
    record.values = read_matrix(file, ref.format);
    record.voxel_ids = manifest.voxel_ids;
    record.axis = manifest.axis;
    validate(record);  // rejects dim mismatches and non-finite values at load
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<SubjectRecord> load_dataset(const std::filesystem::path& manifest_path) {
  const DatasetManifest manifest = read_manifest(manifest_path);
  return load_dataset(manifest, manifest_path.parent_path());
}

std::filesystem::path write_dataset(const std::filesystem::path& out_dir,
                                    const std::vector<SubjectRecord>& records,
                                    MatrixFormat format) {
  if (records.empty()) throw ValidationError("no records to write");
  std::filesystem::create_directories(out_dir);
  DatasetManifest manifest;
  manifest.voxel_ids = records.front().voxel_ids;
  manifest.axis = records.front().axis;
  const std::string ext = format == MatrixFormat::Fcn1 ? ".fcn1" : ".csv";
  for (const SubjectRecord& record : records) {
    validate(record);
    const std::string filename = record.subject_id + ext;
    write_matrix(out_dir / filename, record.values, format);
    manifest.subjects.push_back({record.subject_id, filename, format});
  }
  const std::filesystem::path manifest_path = out_dir / "manifest.json";
  write_manifest(manifest_path, manifest);
  return manifest_path;
}

}  // namespace fconn
