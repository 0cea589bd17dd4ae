#include "hopftwist/findim_json.hpp"

#include "hopftwist/errors.hpp"

namespace hopftwist {

using nlohmann::json;

json scalar_to_json(const GaussQ& c) {
  if (sgn(c.im()) == 0) return rational_str(c.re());
  return json::array({rational_str(c.re()), rational_str(c.im())});
}

namespace {

GaussQ parse_part(const json& j) {
  if (j.is_string()) return GaussQ(parse_rational(j.get<std::string>()));
  if (j.is_number_integer()) return GaussQ(j.get<long>());
  throw Error(Errc::Parse, "scalar must be a \"p/q\" string");
}

int index_of(const json& j, int n, const char* what) {
  if (!j.is_number_integer()) throw Error(Errc::Parse, std::string(what) + " index must be an integer");
  const int i = j.get<int>();
  if (i < 0 || i >= n) throw Error(Errc::DimensionMismatch, std::string(what) + " index out of range");
  return i;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::Parse, std::string("missing field ") + key);
  return j.at(key);
}

Vec vec_from(const json& j, int n, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) throw Error(Errc::DimensionMismatch, std::string(what) + " must have dim entries");
  Vec v;
  for (const auto& x : j) v.push_back(scalar_from_json(x));
  return v;
}

json vec_to(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(scalar_to_json(x));
  return a;
}

// [i, j, k, "re", "im"] or [i, j, k, "re"]
GaussQ entry_scalar(const json& e, size_t first) {
  if (e.size() == first + 1) return scalar_from_json(e[first]);
  if (e.size() == first + 2) return parse_part(e[first]) + GaussQ::i() * parse_part(e[first + 1]);
  throw Error(Errc::Parse, "tensor entry has the wrong length");
}

json entry(std::initializer_list<int> idx, const GaussQ& c) {
  json e = json::array();
  for (int i : idx) e.push_back(i);
  e.push_back(rational_str(c.re()));
  e.push_back(rational_str(c.im()));
  return e;
}

}  // namespace

GaussQ scalar_from_json(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw Error(Errc::Parse, "complex scalar must be [re, im]");
    return parse_part(j[0]) + GaussQ::i() * parse_part(j[1]);
  }
  return parse_part(j);
}

json finhopf_to_json(const FinHopf& H) {
  const int n = H.dim;
  json j;
  j["dim"] = n;
  if (!H.name.empty()) j["name"] = H.name;
  json mul = json::array(), comul = json::array();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (const auto& [k, c] : H.mul[static_cast<size_t>(a * n + b)]) mul.push_back(entry({a, b, k}, c));
  for (int i = 0; i < n; ++i)
    for (const auto& [a, b, c] : H.comul[static_cast<size_t>(i)]) comul.push_back(entry({i, a, b}, c));
  j["mul"] = mul;
  j["comul"] = comul;
  j["unit"] = vec_to(H.unit);
  j["counit"] = vec_to(H.counit);
  json S = json::array();
  for (int r = 0; r < n; ++r) {
    Vec row;
    for (int c = 0; c < n; ++c) row.push_back(H.antipode(r, c));
    S.push_back(vec_to(row));
  }
  j["antipode"] = S;
  return j;
}

FinHopf finhopf_from_json(const json& j) {
  try {
    FinHopf H;
    const json& d = field(j, "dim");
    if (!d.is_number_integer() || d.get<int>() <= 0) throw Error(Errc::Parse, "dim must be a positive integer");
    const int n = d.get<int>();
    H.dim = n;
    if (j.contains("name") && j["name"].is_string()) H.name = j["name"].get<std::string>();
    H.mul.assign(static_cast<size_t>(n * n), {});
    H.comul.assign(static_cast<size_t>(n), {});
    for (const auto& e : field(j, "mul")) {
      if (!e.is_array() || e.size() < 4) throw Error(Errc::Parse, "mul entry must be [i,j,k,re,im]");
      const int a = index_of(e[0], n, "mul"), b = index_of(e[1], n, "mul"), k = index_of(e[2], n, "mul");
      H.mul[static_cast<size_t>(a * n + b)].emplace_back(k, entry_scalar(e, 3));
    }
    for (const auto& e : field(j, "comul")) {
      if (!e.is_array() || e.size() < 4) throw Error(Errc::Parse, "comul entry must be [i,j,k,re,im]");
      const int i = index_of(e[0], n, "comul"), a = index_of(e[1], n, "comul"), b = index_of(e[2], n, "comul");
      H.comul[static_cast<size_t>(i)].emplace_back(a, b, entry_scalar(e, 3));
    }
    H.counit = vec_from(field(j, "counit"), n, "counit");
    const json& S = field(j, "antipode");
    if (!S.is_array() || static_cast<int>(S.size()) != n) throw Error(Errc::DimensionMismatch, "antipode must be dim x dim");
    H.antipode = Mat(n, n);
    for (int r = 0; r < n; ++r) {
      Vec row = vec_from(S[static_cast<size_t>(r)], n, "antipode row");
      for (int c = 0; c < n; ++c) H.antipode(r, c) = row[static_cast<size_t>(c)];
    }
    if (j.contains("unit")) {
      H.unit = vec_from(j["unit"], n, "unit");
    } else {
      // u e_i = e_i for all i
      Mat M(n * n, n);
      Vec rhs = zero_vec(n * n);
      for (int i = 0; i < n; ++i) {
        rhs[static_cast<size_t>(i * n + i)] = GaussQ(1);
        for (int a = 0; a < n; ++a)
          for (const auto& [k, c] : H.mul[static_cast<size_t>(a * n + i)]) M(i * n + k, a) += c;
      }
      auto u = solve(M, rhs);
      if (!u) throw Error(Errc::Parse, "no unit given and the product has none");
      H.unit = *u;
    }
    H.finalize();
    return H;
  } catch (const json::exception& e) {
    throw Error(Errc::Parse, e.what());
  }
}

json cocycle_to_json(const Cocycle& c) {
  json j;
  j["side"] = c.side == CocycleSide::dual ? "dual" : "algebra";
  json d = json::array();
  for (int a = 0; a < c.data.rows(); ++a)
    for (int b = 0; b < c.data.cols(); ++b)
      if (!c.data(a, b).is_zero()) d.push_back(entry({a, b}, c.data(a, b)));
  j["data"] = d;
  return j;
}

Cocycle cocycle_from_json(const FinHopf& H, const json& j) {
  try {
    const json& s = field(j, "side");
    CocycleSide side;
    if (s == "dual") side = CocycleSide::dual;
    else if (s == "algebra") side = CocycleSide::algebra;
    else throw Error(Errc::Parse, "side must be \"dual\" or \"algebra\"");
    const int n = H.dim;
    Mat m(n, n);
    for (const auto& e : field(j, "data")) {
      if (!e.is_array() || e.size() < 3) throw Error(Errc::Parse, "data entry must be [i,j,re,im]");
      m(index_of(e[0], n, "cocycle"), index_of(e[1], n, "cocycle")) += entry_scalar(e, 2);
    }
    return make_cocycle(H, side, m);
  } catch (const json::exception& e) {
    throw Error(Errc::Parse, e.what());
  }
}

}  // namespace hopftwist
