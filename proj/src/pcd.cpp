#include "legipulation/pcd.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "legipulation/error.hpp"

namespace legipulation {

namespace {

std::vector<std::string> splitWhitespace(const std::string& line)
{
  std::istringstream ss(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (ss >> tok)
  {
    tokens.push_back(tok);
  }
  return tokens;
}

std::size_t parseCount(const std::string& token, std::size_t line, const char* key)
{
  std::size_t value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end)
  {
    throw ParseError(std::string(key) + " expects a non-negative integer, got '" + token + "'", line);
  }
  return value;
}

double parseValue(const std::string& token, std::size_t line)
{
  double value = 0.0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end)
  {
    throw ParseError("bad numeric value '" + token + "'", line);
  }
  return value;
}

void appendShortest(std::string& out, double v)
{
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

struct Header
{
  std::vector<std::string> fields;
  std::vector<std::size_t> counts;
  std::optional<std::size_t> width;
  std::optional<std::size_t> height;
  std::optional<std::size_t> points;
};

}  // namespace

PointCloud readPcd(std::istream& in)
{
  Header header;
  std::string line;
  std::size_t line_no = 0;
  bool saw_data = false;
  std::size_t size_tokens = 0;
  std::size_t type_tokens = 0;

  while (std::getline(in, line))
  {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
    {
      line.pop_back();
    }
    const auto tokens = splitWhitespace(line);
    if (tokens.empty() || tokens.front().front() == '#')
    {
      continue;
    }
    const std::string& key = tokens.front();
    const std::vector<std::string> values(tokens.begin() + 1, tokens.end());

    if (key == "VERSION")
    {
      if (values.size() != 1)
      {
        throw ParseError("VERSION expects one value", line_no);
      }
    }
    else if (key == "FIELDS")
    {
      if (values.empty())
      {
        throw ParseError("FIELDS is empty", line_no);
      }
      header.fields = values;
    }
    else if (key == "SIZE")
    {
      size_tokens = values.size();
      for (const auto& v : values)
      {
        parseCount(v, line_no, "SIZE");
      }
    }
    else if (key == "TYPE")
    {
      type_tokens = values.size();
      for (const auto& v : values)
      {
        if (v != "F" && v != "I" && v != "U")
        {
          throw ParseError("TYPE entries must be F, I or U, got '" + v + "'", line_no);
        }
      }
    }
    else if (key == "COUNT")
    {
      header.counts.clear();
      for (const auto& v : values)
      {
        header.counts.push_back(parseCount(v, line_no, "COUNT"));
      }
    }
    else if (key == "WIDTH" || key == "HEIGHT" || key == "POINTS")
    {
      if (values.size() != 1)
      {
        throw ParseError(key + " expects one value", line_no);
      }
      const std::size_t v = parseCount(values.front(), line_no, key.c_str());
      (key == "WIDTH" ? header.width : key == "HEIGHT" ? header.height : header.points) = v;
    }
    else if (key == "VIEWPOINT")
    {
      if (values.size() != 7)
      {
        throw ParseError("VIEWPOINT expects 7 values", line_no);
      }
      for (const auto& v : values)
      {
        parseValue(v, line_no);
      }
    }
    else if (key == "DATA")
    {
      if (values.size() != 1)
      {
        throw ParseError("DATA expects one value", line_no);
      }
      if (values.front() != "ascii")
      {
        throw UnsupportedFormatError("PCD DATA mode '" + values.front() + "' is not supported (ascii only)");
      }
      saw_data = true;
      break;
    }
    else
    {
      throw ParseError("unknown header key '" + key + "'", line_no);
    }
  }

  if (!saw_data)
  {
    throw ParseError("missing DATA line", line_no);
  }
  if (header.fields.empty())
  {
    throw ParseError("missing FIELDS line", line_no);
  }
  const std::size_t n_fields = header.fields.size();
  if (header.counts.empty())
  {
    header.counts.assign(n_fields, 1);
  }
  if (header.counts.size() != n_fields || (size_tokens != 0 && size_tokens != n_fields) ||
      (type_tokens != 0 && type_tokens != n_fields))
  {
    throw ParseError("SIZE/TYPE/COUNT entries do not match FIELDS", line_no);
  }

  std::size_t expected = 0;
  if (header.points)
  {
    expected = *header.points;
  }
  else if (header.width)
  {
    expected = *header.width * header.height.value_or(1);
  }
  else
  {
    throw ParseError("header declares neither POINTS nor WIDTH", line_no);
  }

  std::array<std::size_t, 3> column{};
  const char* names[3] = {"x", "y", "z"};
  std::size_t total_columns = 0;
  std::vector<std::size_t> offsets(n_fields);
  for (std::size_t f = 0; f < n_fields; ++f)
  {
    offsets[f] = total_columns;
    total_columns += header.counts[f];
  }
  for (int axis = 0; axis < 3; ++axis)
  {
    auto it = std::find(header.fields.begin(), header.fields.end(), names[axis]);
    if (it == header.fields.end())
    {
      throw ParseError(std::string("FIELDS lacks '") + names[axis] + "'", line_no);
    }
    column[axis] = offsets[static_cast<std::size_t>(it - header.fields.begin())];
  }

  PointCloud cloud;
  cloud.points.reserve(expected);
  std::size_t rows = 0;
  while (std::getline(in, line))
  {
    ++line_no;
    const auto tokens = splitWhitespace(line);
    if (tokens.empty())
    {
      continue;
    }
    if (rows == expected)
    {
      throw ParseError("more data rows than the " + std::to_string(expected) + " declared by POINTS", line_no);
    }
    if (tokens.size() != total_columns)
    {
      throw ParseError("expected " + std::to_string(total_columns) + " columns, got " +
                           std::to_string(tokens.size()),
                       line_no);
    }
    const Vec3 p(parseValue(tokens[column[0]], line_no), parseValue(tokens[column[1]], line_no),
                 parseValue(tokens[column[2]], line_no));
    ++rows;
    if (p.allFinite())
    {
      cloud.points.push_back(p);
    }
  }
  if (rows != expected)
  {
    throw ParseError("POINTS declares " + std::to_string(expected) + " rows but DATA has " + std::to_string(rows),
                     line_no);
  }
  return cloud;
}

PointCloud loadPcd(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw Error("cannot open '" + path.string() + "'");
  }
  return readPcd(in);
}

void writePcd(std::ostream& out, const PointCloud& cloud)
{
  const std::string n = std::to_string(cloud.size());
  std::string text;
  text += "# .PCD v0.7 - Point Cloud Data file format\n";
  text += "VERSION 0.7\n";
  text += "FIELDS x y z\n";
  text += "SIZE 8 8 8\n";
  text += "TYPE F F F\n";
  text += "COUNT 1 1 1\n";
  text += "WIDTH " + n + "\n";
  text += "HEIGHT 1\n";
  text += "VIEWPOINT 0 0 0 1 0 0 0\n";
  text += "POINTS " + n + "\n";
  text += "DATA ascii\n";
  for (const Vec3& p : cloud.points)
  {
    appendShortest(text, p.x());
    text += ' ';
    appendShortest(text, p.y());
    text += ' ';
    appendShortest(text, p.z());
    text += '\n';
  }
  out << text;
}

void savePcd(const std::filesystem::path& path, const PointCloud& cloud)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    throw Error("cannot write '" + path.string() + "'");
  }
  writePcd(out, cloud);
}

}  // namespace legipulation
