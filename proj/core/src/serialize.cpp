#include "biortho/serialize.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <ostream>

#include <boost/archive/iterators/base64_from_binary.hpp>
#include <boost/archive/iterators/binary_from_base64.hpp>
#include <boost/archive/iterators/transform_width.hpp>
#include <json.hpp>

#include "biortho/errors.hpp"

namespace biortho {

static_assert(std::endian::native == std::endian::little, "payload encoding assumes a little-endian host");

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

using namespace boost::archive::iterators;
using ToBase64 = base64_from_binary<transform_width<std::string::const_iterator, 6, 8>>;
using FromBase64 = transform_width<binary_from_base64<std::string::const_iterator>, 8, 6>;

std::string encode_base64(const std::string& bytes) {
  std::string out(ToBase64(bytes.begin()), ToBase64(bytes.end()));
  out.append((3 - bytes.size() % 3) % 3, '=');
  return out;
}

std::string decode_base64(std::string text) {
  const auto pad = std::count(text.begin(), text.end(), '=');
  std::replace(text.begin(), text.end(), '=', 'A');
  std::string out(FromBase64(text.begin()), FromBase64(text.end()));
  out.erase(out.size() - std::size_t(pad));
  return out;
}

}  // namespace

std::string spectral_field_to_json(const SpectralField& f) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  if (f.layout.is_grid()) {
    const auto& g = f.layout.grid();
    j["layout"] = {{"kind", "grid"}, {"n_per_axis", g.n()}, {"dk", g.dk()}, {"order", "row-major, kz fastest"}};
  } else {
    const auto& q = f.layout.quadrature();
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const auto& r : q.radial_nodes()) nodes.push_back({r.k, r.weight});
    j["layout"] = {{"kind", "spherical_quadrature"}, {"radial_nodes", nodes}, {"radial_degree", q.exact_degree()},
                   {"n_theta", q.n_theta()}, {"n_phi", q.n_phi()}};
  }
  j["epsilon"] = sign(f.epsilon);
  j["helicity"] = f.helicity ? nlohmann::ordered_json(sign(*f.helicity)) : nlohmann::ordered_json(nullptr);
  j["time_label"] = f.time_label;
  j["units"] = "natural";
  j["encoding"] = "base64-f64le-interleaved";
  std::string bytes(f.samples.size() * 2 * sizeof(double), '\0');
  std::memcpy(bytes.data(), f.samples.data(), bytes.size());
  j["samples"] = encode_base64(bytes);
  return j.dump();
}

SpectralField spectral_field_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    const auto& lay = j.at("layout");
    std::optional<MomentumLayout> layout;
    if (lay.at("kind") == "grid") {
      layout.emplace(GridSpec(lay.at("n_per_axis").get<int>(), lay.at("dk").get<double>()));
    } else if (lay.at("kind") == "spherical_quadrature") {
      std::vector<RadialNode> nodes;
      for (const auto& n : lay.at("radial_nodes")) nodes.push_back({n.at(0).get<double>(), n.at(1).get<double>()});
      layout.emplace(SphericalQuadrature(std::move(nodes), lay.at("n_theta").get<int>(), lay.at("n_phi").get<int>(),
                                         lay.at("radial_degree").get<int>()));
    } else {
      throw InvalidArgument("spectral field: unknown layout kind");
    }
    const int eps = j.at("epsilon").get<int>();
    if (eps != 1 && eps != -1) throw InvalidArgument("spectral field: epsilon must be +1 or -1");
    std::optional<Helicity> h;
    if (!j.at("helicity").is_null()) {
      const int hv = j.at("helicity").get<int>();
      if (hv != 1 && hv != -1) throw InvalidArgument("spectral field: helicity must be +1, -1 or null");
      h = Helicity(hv);
    }
    const std::string bytes = decode_base64(j.at("samples").get<std::string>());
    if (bytes.size() != layout->size() * 2 * sizeof(double))
      throw InvalidArgument("spectral field: payload size does not match the layout");
    std::vector<Complex> samples(layout->size());
    std::memcpy(samples.data(), bytes.data(), bytes.size());
    return SpectralField(*layout, std::move(samples), FrequencySign(eps), h, j.at("time_label").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("spectral field: malformed JSON: ") + e.what());
  }
}

void write_spectral_slice_csv(std::ostream& os, const SpectralField& f, int axis) {
  if (axis < 0 || axis > 2) throw InvalidArgument("slice axis must be 0, 1 or 2");
  const GridSpec& g = f.layout.grid();
  os << "k,re,im\n";
  for (int m = -g.n() / 2; m < g.n() / 2; ++m) {
    int idx[3] = {0, 0, 0};
    idx[axis] = m;
    const Complex v = f.samples[g.flat_signed(idx[0], idx[1], idx[2])];
    os << format_double(m * g.dk()) << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
  }
}

}  // namespace biortho
