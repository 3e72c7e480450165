#include "relay/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace relay::io {

namespace {

using nlohmann::ordered_json;

std::string where(const std::string& context) {
  return context.empty() ? std::string("channel") : context;
}

double as_number(const ordered_json& j, const std::string& path, const std::string& context) {
  if (!j.is_number()) {
    throw ValidationError(where(context) + ": " + path + " must be a number");
  }
  return j.get<double>();
}

std::size_t as_size(const ordered_json& j, const std::string& path,
                    const std::string& context) {
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0) {
    throw ValidationError(where(context) + ": " + path + " must be a positive integer");
  }
  return j.get<std::size_t>();
}

std::vector<double> as_vector(const ordered_json& j, std::size_t expected,
                              const std::string& path, const std::string& context) {
  if (!j.is_array() || j.size() != expected) {
    std::ostringstream msg;
    msg << where(context) << ": " << path << " must be an array of " << expected << " numbers";
    throw ValidationError(msg.str());
  }
  std::vector<double> out;
  out.reserve(expected);
  for (std::size_t i = 0; i < expected; ++i) {
    std::ostringstream p;
    p << path << "[" << i << "]";
    out.push_back(as_number(j[i], p.str(), context));
  }
  return out;
}

}  // namespace

ChannelSpec channel_from_json_text(const std::string& text, const std::string& context) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(where(context) + ": not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ValidationError(where(context) + ": top level must be an object");

  static const char* known[] = {"x_size", "t_size", "y_size", "p_t", "kernel"};
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok) throw ValidationError(where(context) + ": unknown field '" + item.key() + "'");
  }
  for (const char* k : known) {
    if (!j.contains(k)) {
      throw ValidationError(where(context) + ": missing field '" + std::string(k) + "'");
    }
  }

  const std::size_t nx = as_size(j["x_size"], "x_size", context);
  const std::size_t nt = as_size(j["t_size"], "t_size", context);
  const std::size_t ny = as_size(j["y_size"], "y_size", context);
  std::vector<double> p_t = as_vector(j["p_t"], nt, "p_t", context);

  // kernel is a nested array: kernel[x][t] is a row over y
  const ordered_json& kj = j["kernel"];
  if (!kj.is_array() || kj.size() != nx) {
    std::ostringstream msg;
    msg << where(context) << ": kernel must be an array of " << nx << " input slices";
    throw ValidationError(msg.str());
  }
  std::vector<double> kernel;
  kernel.reserve(nx * nt * ny);
  for (std::size_t x = 0; x < nx; ++x) {
    const ordered_json& slice = kj[x];
    if (!slice.is_array() || slice.size() != nt) {
      std::ostringstream msg;
      msg << where(context) << ": kernel[" << x << "] must be an array of " << nt << " rows";
      throw ValidationError(msg.str());
    }
    for (std::size_t t = 0; t < nt; ++t) {
      std::ostringstream p;
      p << "kernel[" << x << "][" << t << "]";
      const std::vector<double> row = as_vector(slice[t], ny, p.str(), context);
      kernel.insert(kernel.end(), row.begin(), row.end());
    }
  }

  try {
    return ChannelSpec(nx, nt, ny, ProbVector(std::move(p_t)), kernel);
  } catch (const ValidationError& e) {
    throw ValidationError(where(context) + ": " + e.what());
  }
}

std::string channel_to_json_text(const ChannelSpec& channel) {
  ordered_json j;
  j["x_size"] = channel.x_size();
  j["t_size"] = channel.t_size();
  j["y_size"] = channel.y_size();
  j["p_t"] = channel.p_t().weights();
  ordered_json kernel = ordered_json::array();
  for (std::size_t x = 0; x < channel.x_size(); ++x) {
    ordered_json slice = ordered_json::array();
    for (std::size_t t = 0; t < channel.t_size(); ++t) {
      ordered_json row = ordered_json::array();
      for (std::size_t y = 0; y < channel.y_size(); ++y) row.push_back(channel.kernel(x, t, y));
      slice.push_back(std::move(row));
    }
    kernel.push_back(std::move(slice));
  }
  j["kernel"] = std::move(kernel);
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path + "'");
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failure on '" + path + "'");
}

ChannelSpec read_channel_file(const std::string& path) {
  return channel_from_json_text(read_text_file(path), path);
}

void write_channel_file(const ChannelSpec& channel, const std::string& path) {
  write_text_file(path, channel_to_json_text(channel));
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "r0,cutset,upper_bound,caf,closed_capacity,closed_cutset\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    out << buf;
  };
  for (const SweepRow& row : rows) {
    put(row.r0);
    out << ',';
    put(row.cut_set);
    out << ',';
    put(row.upper_bound);
    out << ',';
    put(row.caf);
    out << ',';
    if (row.closed_capacity) put(*row.closed_capacity);
    out << ',';
    if (row.closed_cutset) put(*row.closed_cutset);
    out << '\n';
  }
  return out.str();
}

}  // namespace relay::io
