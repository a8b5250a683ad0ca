#include "delannoy/serialize.hpp"

#include <fstream>
#include <sstream>

namespace delannoy {

namespace {

const json& field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path + "/" + key, "missing field");
    return *it;
}

void expect_schema(const json& j, const char* schema, const std::string& path) {
    const json& s = field(j, "schema", path);
    if (!s.is_string() || s.get<std::string>() != schema)
        throw SchemaError(path + "/schema", std::string("expected \"") + schema + "\", got " + s.dump());
}

long as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer, got " + j.dump());
    return j.get<long>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a string, got " + j.dump());
    return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
    return j;
}

json measure_json(const MeasureSpec& m) { return {{"index", m.index}, {"field", m.field.name()}}; }

MeasureSpec measure_from(const json& j, const std::string& path) {
    MeasureSpec m;
    m.index.clear();
    const json& idx = as_array(field(j, "index", path), path + "/index");
    for (std::size_t k = 0; k < idx.size(); ++k) {
        long v = as_int(idx[k], path + "/index/" + std::to_string(k));
        if (v < 1 || v > 4) throw SchemaError(path + "/index/" + std::to_string(k), "measure index must be 1..4");
        m.index.push_back(static_cast<int>(v));
    }
    if (m.index.empty() || m.r() > kMaxFactors) throw SchemaError(path + "/index", "need 1..4 factors");
    try {
        m.field = Field::parse(as_string(field(j, "field", path), path + "/field"));
    } catch (const SchemaError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw SchemaError(path + "/field", e.what());
    }
    return m;
}

GSet gset_body(const json& j, const std::string& path) {
    GSet x;
    long r = as_int(field(j, "r", path), path + "/r");
    if (r < 1 || r > kMaxFactors) throw SchemaError(path + "/r", "r must be 1..4");
    x.r = static_cast<int>(r);
    const json& orbs = as_array(field(j, "orbits", path), path + "/orbits");
    for (std::size_t i = 0; i < orbs.size(); ++i) {
        std::string p = path + "/orbits/" + std::to_string(i);
        const json& a = as_array(orbs[i], p);
        if (static_cast<long>(a.size()) != r) throw SchemaError(p, "expected " + std::to_string(r) + " arities");
        std::vector<int> ar;
        for (std::size_t t = 0; t < a.size(); ++t) {
            long v = as_int(a[t], p + "/" + std::to_string(t));
            if (v < 0 || v > kMaxSlots) throw SchemaError(p + "/" + std::to_string(t), "arity out of range");
            ar.push_back(static_cast<int>(v));
        }
        x.orbits.push_back(OrbitSymbol::of(ar));
    }
    return x;
}

json gset_body_json(const GSet& x) {
    json orbs = json::array();
    for (auto& o : x.orbits) {
        json a = json::array();
        for (int t = 0; t < x.r; ++t) a.push_back(o[t]);
        orbs.push_back(a);
    }
    return {{"r", x.r}, {"orbits", orbs}};
}

// The pattern must interleave exactly the coordinates of the two orbits.
void check_component(const Component& c, const GSet& left, const GSet& right, const std::string& path) {
    if (c.parents[0] >= left.size()) throw SchemaError(path + "/parents/0", "orbit index out of range");
    if (c.parents[1] >= right.size()) throw SchemaError(path + "/parents/1", "orbit index out of range");
    for (int t = 0; t < c.r(); ++t) {
        int nl = 0, nr = 0;
        for (Letter x : c.words[t]) {
            nl += (x & kL) ? 1 : 0;
            nr += (x & kR) ? 1 : 0;
        }
        if (nl != left[c.parents[0]][t] || nr != right[c.parents[1]][t])
            throw SchemaError(path + "/pattern", "pattern '" + c.text() + "' does not fit orbits " +
                                                     left[c.parents[0]].str() + " and " + right[c.parents[1]].str());
    }
}

}  // namespace

json component_json(const Component& c) { return {{"parents", c.parents}, {"pattern", c.text()}}; }

Component component_from_json(const json& j, int r, const std::string& path) {
    Component c;
    const json& ps = as_array(field(j, "parents", path), path + "/parents");
    if (ps.size() != 2) throw SchemaError(path + "/parents", "expected two orbit indices");
    for (std::size_t k = 0; k < 2; ++k) {
        long v = as_int(ps[k], path + "/parents/" + std::to_string(k));
        if (v < 0) throw SchemaError(path + "/parents/" + std::to_string(k), "negative orbit index");
        c.parents.push_back(static_cast<std::uint32_t>(v));
    }
    std::string pat = as_string(field(j, "pattern", path), path + "/pattern");
    std::vector<std::string> parts;
    std::stringstream ss(pat);
    std::string part;
    while (std::getline(ss, part, '|')) parts.push_back(part);
    if (!pat.empty() && pat.back() == '|') parts.emplace_back();
    if (pat.empty()) parts.emplace_back();
    if (static_cast<int>(parts.size()) != r)
        throw SchemaError(path + "/pattern", "expected " + std::to_string(r) + " '|'-separated words in '" + pat + "'");
    for (auto& w : parts) {
        try {
            c.words.push_back(parse_word(w, 2));
        } catch (const std::invalid_argument& e) {
            throw SchemaError(path + "/pattern", e.what());
        }
    }
    return c;
}

json to_json(const GSet& x) {
    json j = gset_body_json(x);
    j["schema"] = kGSetSchema;
    return j;
}

GSet gset_from_json(const json& j) {
    expect_schema(j, kGSetSchema, "");
    return gset_body(j, "");
}

json to_json(const Morphism& f) {
    json cs = json::array();
    for (auto& [k, v] : f.coeffs) {
        json c = component_json(k);
        c["value"] = v.str();
        cs.push_back(c);
    }
    return {{"schema", kMorphismSchema},
            {"measure", measure_json(f.measure)},
            {"source", gset_body_json(f.source)},
            {"target", gset_body_json(f.target)},
            {"coeffs", cs}};
}

Morphism morphism_from_json(const json& j) {
    expect_schema(j, kMorphismSchema, "");
    MeasureSpec m = measure_from(field(j, "measure", ""), "/measure");
    GSet src = gset_body(field(j, "source", ""), "/source");
    GSet tgt = gset_body(field(j, "target", ""), "/target");
    if (src.r != m.r() || tgt.r != m.r()) throw SchemaError("/measure", "factor count differs from the objects");
    Morphism f = Morphism::zero(src, tgt, m);
    const json& cs = as_array(field(j, "coeffs", ""), "/coeffs");
    for (std::size_t i = 0; i < cs.size(); ++i) {
        std::string p = "/coeffs/" + std::to_string(i);
        Component c = component_from_json(cs[i], m.r(), p);
        check_component(c, tgt, src, p);
        Scalar v;
        try {
            v = Scalar::parse(as_string(field(cs[i], "value", p), p + "/value"), m.field);
        } catch (const SchemaError&) {
            throw;
        } catch (const std::exception& e) {
            throw SchemaError(p + "/value", e.what());
        }
        if (f.coeffs.count(c)) throw SchemaError(p, "duplicate component");
        f.add(c, v);
    }
    return f;
}

json to_json(const OrderedGSet& o) {
    json ls = json::array();
    for (auto& c : o.less) ls.push_back(component_json(c));
    return {{"schema", kOrderedSchema}, {"carrier", gset_body_json(o.carrier)}, {"less", ls}};
}

OrderedGSet ordered_from_json(const json& j) {
    expect_schema(j, kOrderedSchema, "");
    OrderedGSet o;
    o.carrier = gset_body(field(j, "carrier", ""), "/carrier");
    const json& ls = as_array(field(j, "less", ""), "/less");
    for (std::size_t i = 0; i < ls.size(); ++i) {
        std::string p = "/less/" + std::to_string(i);
        Component c = component_from_json(ls[i], o.r(), p);
        check_component(c, o.carrier, o.carrier, p);
        o.less.insert(c);
    }
    return o;
}

json to_json(const DelannicProfile& p) {
    auto vec = [](const std::vector<Scalar>& v) {
        json a = json::array();
        for (auto& s : v) a.push_back(s.str());
        return a;
    };
    json j = {{"schema", kProfileSchema}, {"type", type_name(p.type)}, {"dim", p.dim.str()},
              {"gamma1", vec(p.gamma1)}, {"gamma2", vec(p.gamma2)}, {"uniform1", p.uniform1},
              {"uniform2", p.uniform2}};
    if (p.uniform1) j["g1"] = p.g1.str();
    if (p.uniform2) j["g2"] = p.g2.str();
    if (!p.note.empty()) j["note"] = p.note;
    return j;
}

json to_json(const TensorFunctor& F) {
    json j = {{"schema", kFunctorSchema}, {"source_type", F.source_type}, {"target", measure_json(F.target)}};
    if (F.expr) j["expr"] = F.expr->str();
    else j["generator"] = to_json(F.gen);
    j["profile"] = to_json(F.prof);
    return j;
}

std::shared_ptr<TensorFunctor> functor_from_json(const json& j) {
    expect_schema(j, kFunctorSchema, "");
    long i = as_int(field(j, "source_type", ""), "/source_type");
    if (i < 1 || i > 4) throw SchemaError("/source_type", "must be 1..4");
    MeasureSpec m = measure_from(field(j, "target", ""), "/target");
    if (j.contains("expr")) {
        ExprPtr e;
        try {
            e = parse_expr(as_string(j["expr"], "/expr"));
        } catch (const ParseError& err) {
            throw SchemaError("/expr", err.what());
        }
        if (e->max_factor() >= m.r()) throw SchemaError("/expr", "generator factor outside the target");
        return build_functor(static_cast<int>(i), m, e);
    }
    if (!j.contains("generator")) throw SchemaError("", "need 'expr' or 'generator'");
    OrderedGSet g;
    try {
        g = ordered_from_json(j["generator"]);
    } catch (const SchemaError& e) {
        throw SchemaError("/generator" + e.path, std::string(e.what()).substr(e.path.size() + 2));
    }
    return build_functor(static_cast<int>(i), m, g);
}

json read_json_file(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open '" + file + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(file + ": " + e.what());
    }
}

}  // namespace delannoy
