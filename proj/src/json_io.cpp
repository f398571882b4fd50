#include "equiv/json_io.hpp"

#include "json.hpp"

namespace equiv {

namespace {

using nlohmann::json;

json entries_json(const std::vector<Cplx>& a) {
    json out = json::array();
    for (const auto& z : a) out.push_back(json::array({z.real(), z.imag()}));
    return out;
}

std::vector<Cplx> entries_from(const json& j, size_t want) {
    if (!j.is_array() || j.size() != want) throw input_error("entry count mismatch");
    std::vector<Cplx> out;
    out.reserve(want);
    for (const auto& e : j) out.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return out;
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw input_error(std::string("JSON parse error: ") + e.what());
    }
}

}  // namespace

std::string matrix_to_json(const CMatrix& m) {
    json j;
    j["dims"] = {m.n, m.n};
    j["entries"] = entries_json(m.a);
    return j.dump();
}

CMatrix matrix_from_json_text(const std::string& text) {
    json j = parse(text);
    auto dims = j.at("dims").get<std::vector<int>>();
    if (dims.size() != 2 || dims[0] != dims[1]) throw input_error("matrix dims must be [N,N]");
    CMatrix m(dims[0]);
    m.a = entries_from(j.at("entries"), m.a.size());
    return m;
}

std::string tensor_to_json(const Tensor<Cplx>& t) {
    json j;
    j["dims"] = std::vector<int>(t.D, t.N);
    j["entries"] = entries_json(t.a);
    return j.dump();
}

Tensor<Cplx> tensor_from_json_text(const std::string& text) {
    json j = parse(text);
    auto dims = j.at("dims").get<std::vector<int>>();
    if (dims.empty()) throw input_error("tensor needs at least one dimension");
    for (int d : dims)
        if (d != dims[0]) throw input_error("tensor dims must be uniform");
    Tensor<Cplx> t(int(dims.size()), dims[0]);
    t.a = entries_from(j.at("entries"), t.a.size());
    return t;
}

std::string top_to_json(const TOp<Cplx>& p) {
    json j;
    std::vector<int> dims(size_t(2) * p.D, p.N);
    j["dims"] = dims;
    j["entries"] = entries_json(p.a);
    return j.dump();
}

TOp<Cplx> top_from_json_text(const std::string& text) {
    json j = parse(text);
    auto dims = j.at("dims").get<std::vector<int>>();
    if (dims.size() % 2 != 0 || dims.empty()) throw input_error("operator dims must pair up");
    for (int d : dims)
        if (d != dims[0]) throw input_error("operator dims must be uniform");
    TOp<Cplx> p(int(dims.size()) / 2, dims[0]);
    p.a = entries_from(j.at("entries"), p.a.size());
    return p;
}

std::string estimate_to_json(const Estimate& e) {
    json j;
    j["mean"] = {e.mean.real(), e.mean.imag()};
    j["stderr"] = e.stderr_;
    j["n"] = e.n;
    return j.dump();
}

Estimate estimate_from_json_text(const std::string& text) {
    json j = parse(text);
    Estimate e;
    e.mean = Cplx(j.at("mean").at(0).get<double>(), j.at("mean").at(1).get<double>());
    e.stderr_ = j.at("stderr").get<double>();
    e.n = j.at("n").get<std::uint64_t>();
    return e;
}

}  // namespace equiv
