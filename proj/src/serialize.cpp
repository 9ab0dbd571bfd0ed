#include "nmc/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "nmc/errors.hpp"

namespace nmc {

namespace {

void check_version(const ojson& j) {
    if (!j.contains("format_version") || !j["format_version"].is_number_integer()) {
        throw IoError("missing format_version");
    }
    int v = j["format_version"].get<int>();
    if (v != kFormatVersion) {
        throw IoError("unsupported format_version " + std::to_string(v) + ", expected " +
                      std::to_string(kFormatVersion));
    }
}

std::vector<uint64_t> hex_array_to_u64s(const ojson& j, const char* what) {
    if (!j.is_array()) throw IoError(std::string(what) + ": expected an array");
    std::vector<uint64_t> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(hex_to_u64(e.get<std::string>()));
    return out;
}

ojson u64s_to_hex_array(const std::vector<uint64_t>& v) {
    ojson arr = ojson::array();
    for (uint64_t x : v) arr.push_back(u64_to_hex(x));
    return arr;
}

}  // namespace

std::string u64_to_hex(uint64_t v) {
    std::string s;
    do {
        s += "0123456789abcdef"[v & 0xf];
        v >>= 4;
    } while (v);
    return std::string(s.rbegin(), s.rend());
}

uint64_t hex_to_u64(const std::string& s) {
    if (s.empty() || s.size() > 16) throw IoError("bad hex string: '" + s + "'");
    uint64_t v = 0;
    for (char c : s) {
        v <<= 4;
        if (c >= '0' && c <= '9') v |= static_cast<uint64_t>(c - '0');
        else if (c >= 'a' && c <= 'f') v |= static_cast<uint64_t>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') v |= static_cast<uint64_t>(c - 'A' + 10);
        else throw IoError("bad hex string: '" + s + "'");
    }
    return v;
}

ojson field_spec_to_json(const FieldSpec& f) {
    // modulus has m+1 bits; for m = 64 the top bit leaves uint64 range,
    // so emit the hex of the full 65-bit value manually
    return ojson{{"m", f.m}, {"modulus_hex", f.modulus_hex()}};
}

FieldSpec field_spec_from_json(const ojson& j) {
    int m = j.at("m").get<int>();
    std::string hex = j.at("modulus_hex").get<std::string>();
    if (hex.empty() || hex.size() > 32) throw IoError("bad modulus_hex");
    u128 v = 0;
    for (char c : hex) {
        v <<= 4;
        if (c >= '0' && c <= '9') v |= static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') v |= static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') v |= static_cast<unsigned>(c - 'A' + 10);
        else throw IoError("bad modulus_hex");
    }
    return FieldSpec::from_modulus(m, v);
}

ojson poly_to_json(const Poly& p) { return u64s_to_hex_array(p.coeffs); }

Poly poly_from_json(const ojson& j) { return Poly{hex_array_to_u64s(j, "poly")}; }

ojson code_params_to_json(const CodeParams& p) {
    return ojson{{"n", p.n}, {"k", p.k}, {"t", p.t}, {"delta", p.delta},
                 {"seed", p.seed}};
}

CodeParams code_params_from_json(const ojson& j) {
    CodeParams p;
    p.n = j.at("n").get<int>();
    p.k = j.at("k").get<int>();
    p.t = j.at("t").get<uint64_t>();
    p.delta = j.value("delta", 0.0);
    p.seed = j.value("seed", 0ull);
    return p;
}

ojson table_code_to_json(const TableCode& code) {
    ojson blobs = ojson::array();
    for (const auto& blob : code.blobs()) blobs.push_back(u64s_to_hex_array(blob));
    return ojson{{"format_version", kFormatVersion},
                 {"kind", "table"},
                 {"params", code_params_to_json(code.params())},
                 {"blobs", std::move(blobs)}};
}

TableCode table_code_from_json(const ojson& j) {
    check_version(j);
    if (j.value("kind", "") != "table") throw IoError("expected kind 'table'");
    CodeParams p = code_params_from_json(j.at("params"));
    std::vector<std::vector<uint64_t>> blobs;
    for (const auto& b : j.at("blobs")) blobs.push_back(hex_array_to_u64s(b, "blob"));
    return TableCode::from_blobs(p, std::move(blobs));
}

ojson mc_code_to_json(const MonteCarloCode& code) {
    return ojson{{"format_version", kFormatVersion},
                 {"kind", "mc"},
                 {"params", code_params_to_json(code.params())},
                 {"field", field_spec_to_json(code.field())},
                 {"poly", poly_to_json(code.poly())}};
}

MonteCarloCode mc_code_from_json(const ojson& j) {
    check_version(j);
    if (j.value("kind", "") != "mc") throw IoError("expected kind 'mc'");
    CodeParams p = code_params_from_json(j.at("params"));
    FieldSpec field = field_spec_from_json(j.at("field"));
    Poly poly = poly_from_json(j.at("poly"));
    return MonteCarloCode::from_parts(p, field, std::move(poly));
}

ojson code_to_json(const CodingScheme& code) {
    if (const auto* t = dynamic_cast<const TableCode*>(&code)) return table_code_to_json(*t);
    if (const auto* m = dynamic_cast<const MonteCarloCode*>(&code)) return mc_code_to_json(*m);
    throw IoError("this coding scheme kind has no serialized form");
}

LoadedCode code_from_json(const ojson& j) {
    check_version(j);
    std::string kind = j.value("kind", "");
    if (kind == "table") {
        return {kind, std::make_shared<TableCode>(table_code_from_json(j))};
    }
    if (kind == "mc") {
        return {kind, std::make_shared<MonteCarloCode>(mc_code_from_json(j))};
    }
    throw IoError("unknown code kind '" + kind + "'");
}

ojson tamper_to_json(const TamperSpec& f, bool include_tables) {
    ojson j{{"kind", tamper_kind_name(f.kind())}, {"n", f.n()}};
    auto table_field = [&](const char* name, const std::vector<uint64_t>& t) {
        if (include_tables || t.size() <= (1ull << 16)) {
            j[name] = u64s_to_hex_array(t);
        } else {
            j[std::string(name) + "_entries"] = t.size();
        }
    };
    switch (f.kind()) {
        case TamperKind::identity:
            break;
        case TamperKind::bitwise: {
            std::string acts;
            for (BitAction a : f.actions()) acts += "kf01"[static_cast<int>(a)];
            j["actions"] = acts;
            break;
        }
        case TamperKind::additive:
            j["delta"] = u64_to_hex(f.delta());
            break;
        case TamperKind::constant:
            j["c"] = u64_to_hex(f.constant());
            break;
        case TamperKind::split:
            table_field("g1", f.g1());
            table_field("g2", f.g2());
            break;
        case TamperKind::subset:
            j["positions"] = f.positions();
            table_field("g", f.table());
            break;
        case TamperKind::table:
            table_field("table", f.table());
            break;
    }
    return j;
}

TamperSpec tamper_from_json(const ojson& j) {
    TamperKind kind = tamper_kind_from_name(j.at("kind").get<std::string>());
    int n = j.at("n").get<int>();
    switch (kind) {
        case TamperKind::identity:
            return TamperSpec::identity(n);
        case TamperKind::bitwise: {
            std::string acts = j.at("actions").get<std::string>();
            std::vector<BitAction> v;
            for (char c : acts) {
                switch (c) {
                    case 'k': v.push_back(BitAction::keep); break;
                    case 'f': v.push_back(BitAction::flip); break;
                    case '0': v.push_back(BitAction::set0); break;
                    case '1': v.push_back(BitAction::set1); break;
                    default: throw IoError("bad bitwise action string");
                }
            }
            return TamperSpec::bitwise(std::move(v));
        }
        case TamperKind::additive:
            return TamperSpec::additive(n, hex_to_u64(j.at("delta").get<std::string>()));
        case TamperKind::constant:
            return TamperSpec::constant_fn(n, hex_to_u64(j.at("c").get<std::string>()));
        case TamperKind::split:
            return TamperSpec::split_state(n, hex_array_to_u64s(j.at("g1"), "g1"),
                                           hex_array_to_u64s(j.at("g2"), "g2"));
        case TamperKind::subset:
            return TamperSpec::subset_action(n, j.at("positions").get<std::vector<int>>(),
                                             hex_array_to_u64s(j.at("g"), "g"));
        case TamperKind::table:
            return TamperSpec::explicit_table(n, hex_array_to_u64s(j.at("table"), "table"));
    }
    throw IoError("unknown tamper kind");
}

ojson outcome_dist_to_json(const OutcomeDist& d) {
    ojson mass = ojson::object();
    for (const auto& [o, m] : d.mass) mass[outcome_to_string(o)] = m;
    ojson j{{"mass", std::move(mass)}, {"exact", d.exact}};
    if (!d.exact) {
        j["samples"] = d.samples;
        j["radius"] = d.radius;
    }
    return j;
}

OutcomeDist outcome_dist_from_json(const ojson& j) {
    OutcomeDist d;
    d.exact = j.value("exact", true);
    d.samples = j.value("samples", 0ull);
    d.radius = j.value("radius", 0.0);
    for (const auto& [key, val] : j.at("mass").items()) {
        Outcome o = key == "bot"    ? Outcome::bot()
                    : key == "same" ? Outcome::same()
                                    : Outcome::msg(hex_to_u64(key));
        d.mass[o] = val.get<double>();
    }
    return d;
}

ojson swap_result_to_json(const SwapAttackResult& r) {
    return ojson{{"s1", u64_to_hex(r.s1)},
                 {"s2", u64_to_hex(r.s2)},
                 {"c1", u64_to_hex(r.c1)},
                 {"c2", u64_to_hex(r.c2)},
                 {"f", tamper_to_json(r.f, r.f.n() <= 16)},
                 {"achieved_error", r.achieved_error}};
}

ojson subset_outcome_to_json(const SubsetAttackOutcome& o) {
    if (!o.applicable) {
        return ojson{{"applicable", false}, {"reason", o.reason}};
    }
    const SubsetAttackResult& r = *o.result;
    return ojson{{"applicable", true},
                 {"T", r.positions},
                 {"s0", u64_to_hex(r.s0)},
                 {"s1", u64_to_hex(r.s1)},
                 {"x_eta", u64s_to_hex_array(r.x_eta)},
                 {"w", u64_to_hex(r.w)},
                 {"eta", r.eta},
                 {"mass_s0", r.mass_s0},
                 {"mass_s1", r.mass_s1},
                 {"measured_gap", r.measured_gap},
                 {"f", tamper_to_json(r.f)}};
}

ojson barrier_report_to_json(const BarrierReport& r) {
    return ojson{{"dist_to_uniform_2k", r.dist_to_uniform_2k},
                 {"marginal_dist_to_uniform_k", r.marginal_dist_to_uniform_k},
                 {"support_bound", r.support_bound},
                 {"rebuilds", r.rebuilds}};
}

ojson read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    try {
        ojson j;
        in >> j;
        return j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("corrupted JSON in '" + path + "': " + e.what());
    }
}

void write_file_atomic(const std::string& path, const std::string& bytes) {
    std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw IoError("short write to '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) throw IoError("rename to '" + path + "' failed: " + ec.message());
}

}  // namespace nmc
