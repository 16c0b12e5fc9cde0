#include "josc/model_config.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace josc {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& what) {
    throw std::invalid_argument("model config: " + what);
}

const json& require(const json& obj, const char* name, const char* where) {
    const auto it = obj.find(name);
    if (it == obj.end())
        bad_field(std::string("missing field \"") + name + "\" in " + where);
    return *it;
}

double require_number(const json& obj, const char* name, const char* where) {
    const json& v = require(obj, name, where);
    if (!v.is_number())
        bad_field(std::string("field \"") + name + "\" must be a number");
    return v.get<double>();
}

Index require_integer(const json& obj, const char* name, const char* where) {
    const json& v = require(obj, name, where);
    if (!v.is_number_integer())
        bad_field(std::string("field \"") + name + "\" must be an integer");
    return v.get<Index>();
}

std::vector<double> require_array(const json& obj, const char* name, const char* where) {
    const json& v = require(obj, name, where);
    if (!v.is_array() || v.empty())
        bad_field(std::string("field \"") + name + "\" must be a non-empty array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number())
            bad_field(std::string("field \"") + name + "\" must contain numbers only");
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<double> optional_array(const json& obj, const char* name, const char* where,
                                   bool& present) {
    present = obj.contains(name);
    return present ? require_array(obj, name, where) : std::vector<double>{};
}

}  // namespace

CoefficientModel model_from_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        bad_field(std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) bad_field("top level must be an object");

    const json& fam = require(doc, "family", "config");
    if (!fam.is_string()) bad_field("field \"family\" must be a string");
    const std::string family = fam.get<std::string>();

    const json empty = json::object();
    const json& params = doc.contains("params") ? doc.at("params") : empty;
    if (!params.is_object()) bad_field("field \"params\" must be an object");

    Index n0 = 0;
    const bool has_n0 = doc.contains("n0");
    if (has_n0) {
        n0 = require_integer(doc, "n0", "config");
        if (n0 < 1) bad_field("field \"n0\" must be >= 1");
    }

    if (family == "kneser" || family == "loglog") {
        const double c = require_number(params, "c", "params");
        CoefficientModel m =
            family == "kneser"
                ? kneser_family(c)
                : loglog_family(static_cast<int>(require_integer(params, "k", "params")), c);
        if (has_n0) {
            if (n0 < m.n0)
                bad_field("field \"n0\" is below the family domain start " +
                          std::to_string(m.n0));
            m.n0 = n0;
        }
        return m;
    }
    if (family == "variable_a") {
        const Index start = has_n0 ? n0 : 1;
        std::vector<double> a = require_array(params, "a", "params");
        std::vector<double> b = require_array(params, "b", "params");
        return variable_a_family(Sequence::table(start - 1, std::move(a)),
                                 Sequence::table(start - 1, std::move(b)), start);
    }
    if (family == "table") {
        TableModelOptions opts;
        opts.n0 = has_n0 ? n0 : 1;
        bool present = false;
        std::vector<double> b0 = optional_array(params, "b0", "params", present);
        if (present) opts.b0 = std::move(b0);
        std::vector<double> u0 = optional_array(params, "u0", "params", present);
        if (present) opts.u0 = std::move(u0);
        return table_model(require_array(params, "a", "params"),
                           require_array(params, "b", "params"), std::move(opts));
    }
    bad_field("unknown family \"" + family + "\"");
}

CoefficientModel model_from_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("model config: cannot open file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_config_text(buf.str());
}

}  // namespace josc
