#include "discjam/io.hpp"

#include "discjam/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace discjam {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const std::set<std::string> top_fields{"schema_version", "box", "radius", "centers", "metadata"};
const std::set<std::string> box_fields{"xmin", "ymin", "xmax", "ymax"};
const std::set<std::string> meta_fields{"construction", "N", "epsilon", "seed"};

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where)
{
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            throw SchemaError("unknown field '" + where + item.key() + "'");
}

double finite_number(const json& v, const std::string& field)
{
    if (!v.is_number())
        throw SchemaError("field '" + field + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d))
        throw SchemaError("field '" + field + "' must be finite");
    return d;
}

const json& required(const json& obj, const std::string& key, const std::string& where = "")
{
    const auto it = obj.find(key);
    if (it == obj.end())
        throw SchemaError("missing field '" + where + key + "'");
    return *it;
}

ordered_json side_to_json(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json params_to_json(const ParamList& params)
{
    ordered_json out = ordered_json::object();
    for (const auto& [key, value] : params)
        std::visit([&out, &key](const auto& v) { out[key] = v; }, value);
    return out;
}

double wrapped_degrees(double rad)
{
    double d = std::fmod(rad * 180.0 / std::numbers::pi, 360.0);
    return d < 0.0 ? d + 360.0 : d;
}

std::string fixed(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace

std::string format_shortest(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string config_to_json(const Configuration& config)
{
    ordered_json j;
    j["schema_version"] = config_schema_version;
    if (config.box.is_plane()) {
        j["box"] = "plane";
    } else {
        j["box"] = ordered_json{{"xmin", side_to_json(config.box.xmin)},
                                {"ymin", side_to_json(config.box.ymin)},
                                {"xmax", side_to_json(config.box.xmax)},
                                {"ymax", side_to_json(config.box.ymax)}};
    }
    j["radius"] = config.radius;
    ordered_json centers = ordered_json::array();
    for (const Point2& p : config.centers)
        centers.push_back({p.x, p.y});
    j["centers"] = std::move(centers);
    ordered_json meta = ordered_json::object();
    if (!config.meta.construction.empty())
        meta["construction"] = config.meta.construction;
    if (config.meta.N)
        meta["N"] = *config.meta.N;
    if (config.meta.epsilon)
        meta["epsilon"] = *config.meta.epsilon;
    if (config.meta.seed)
        meta["seed"] = *config.meta.seed;
    j["metadata"] = std::move(meta);
    return j.dump() + "\n";
}

Configuration config_from_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("malformed configuration JSON: ") + e.what());
    }
    if (!j.is_object())
        throw SchemaError("configuration must be a JSON object");
    reject_unknown(j, top_fields, "");

    const json& version = required(j, "schema_version");
    if (!version.is_number_integer())
        throw SchemaError("field 'schema_version' must be an integer");
    if (version.get<long long>() != config_schema_version)
        throw SchemaError("unsupported schema_version " + version.dump() + " (expected " +
                          std::to_string(config_schema_version) + ")");

    Configuration cfg;
    const json& box = required(j, "box");
    if (box.is_string()) {
        if (box.get<std::string>() != "plane")
            throw SchemaError("field 'box' must be \"plane\" or an object");
        cfg.box = Box::plane();
    } else if (box.is_object()) {
        reject_unknown(box, box_fields, "box.");
        auto side = [&](const char* key, double unbounded) {
            const json& v = required(box, key, "box.");
            return v.is_null() ? unbounded : finite_number(v, std::string("box.") + key);
        };
        cfg.box = Box{side("xmin", -Box::inf), side("ymin", -Box::inf), side("xmax", Box::inf),
                      side("ymax", Box::inf)};
        if (!(cfg.box.xmin < cfg.box.xmax) || !(cfg.box.ymin < cfg.box.ymax))
            throw SchemaError("field 'box' has inverted sides");
    } else {
        throw SchemaError("field 'box' must be \"plane\" or an object");
    }

    cfg.radius = finite_number(required(j, "radius"), "radius");
    if (!(cfg.radius > 0.0))
        throw SchemaError("field 'radius' must be positive");

    const json& centers = required(j, "centers");
    if (!centers.is_array())
        throw SchemaError("field 'centers' must be an array");
    cfg.centers.reserve(centers.size());
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const json& c = centers[i];
        const std::string field = "centers[" + std::to_string(i) + "]";
        if (!c.is_array() || c.size() != 2)
            throw SchemaError("field '" + field + "' must be an [x, y] pair");
        cfg.centers.push_back({finite_number(c[0], field + "[0]"), finite_number(c[1], field + "[1]")});
    }

    if (const auto it = j.find("metadata"); it != j.end()) {
        const json& meta = *it;
        if (!meta.is_object())
            throw SchemaError("field 'metadata' must be an object");
        reject_unknown(meta, meta_fields, "metadata.");
        if (const auto m = meta.find("construction"); m != meta.end()) {
            if (!m->is_string())
                throw SchemaError("field 'metadata.construction' must be a string");
            cfg.meta.construction = m->get<std::string>();
        }
        if (const auto m = meta.find("N"); m != meta.end()) {
            if (!m->is_number_integer())
                throw SchemaError("field 'metadata.N' must be an integer");
            cfg.meta.N = m->get<int>();
        }
        if (const auto m = meta.find("epsilon"); m != meta.end())
            cfg.meta.epsilon = finite_number(*m, "metadata.epsilon");
        if (const auto m = meta.find("seed"); m != meta.end()) {
            if (!m->is_number_unsigned())
                throw SchemaError("field 'metadata.seed' must be a non-negative integer");
            cfg.meta.seed = m->get<std::uint64_t>();
        }
    }
    return cfg;
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out)
        throw IoError("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw IoError("failed reading '" + path + "'");
    return ss.str();
}

void write_config(const Configuration& config, const std::string& path)
{
    write_text_file(path, config_to_json(config));
}

Configuration read_config(const std::string& path)
{
    const std::string text = read_text_file(path);
    try {
        return config_from_json(text);
    } catch (const SchemaError& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

std::string config_to_csv(const Configuration& config)
{
    std::string out = "radius," + format_shortest(config.radius) + "\nx,y\n";
    for (const Point2& p : config.centers)
        out += format_shortest(p.x) + "," + format_shortest(p.y) + "\n";
    return out;
}

void write_csv(const Configuration& config, const std::string& path)
{
    write_text_file(path, config_to_csv(config));
}

std::string render_svg(const Configuration& config, const RenderOptions& options)
{
    const double r = config.radius;
    const Box& box = config.box;

    double x0 = box.xmin, y0 = box.ymin, x1 = box.xmax, y1 = box.ymax;
    if (!box.is_bounded()) {
        double bx0 = Box::inf, by0 = Box::inf, bx1 = -Box::inf, by1 = -Box::inf;
        for (const Point2& p : config.centers) {
            bx0 = std::min(bx0, p.x - r);
            by0 = std::min(by0, p.y - r);
            bx1 = std::max(bx1, p.x + r);
            by1 = std::max(by1, p.y + r);
        }
        if (config.centers.empty()) {
            bx0 = by0 = 0.0;
            bx1 = by1 = 1.0;
        }
        x0 = std::isfinite(x0) ? std::min(x0, bx0) : bx0;
        y0 = std::isfinite(y0) ? std::min(y0, by0) : by0;
        x1 = std::isfinite(x1) ? std::max(x1, bx1) : bx1;
        y1 = std::isfinite(y1) ? std::max(y1, by1) : by1;
    }
    const double margin = 0.02 * std::max(x1 - x0, y1 - y0);
    x0 -= margin;
    y0 -= margin;
    x1 += margin;
    y1 += margin;
    const double k = options.width_px / (x1 - x0);
    const double W = options.width_px;
    const double H = (y1 - y0) * k;
    auto sx = [&](double x) { return fixed((x - x0) * k); };
    auto sy = [&](double y) { return fixed((y1 - y) * k); };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fixed(W) << "\" height=\""
        << fixed(H) << "\" viewBox=\"0 0 " << fixed(W) << " " << fixed(H) << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << fixed(W) << "\" height=\"" << fixed(H) << "\" fill=\"white\"/>\n";

    svg << "<g id=\"walls\" stroke=\"black\" stroke-width=\"1.5\">\n";
    auto line = [&](double ax, double ay, double bx, double by) {
        svg << "<line x1=\"" << sx(ax) << "\" y1=\"" << sy(ay) << "\" x2=\"" << sx(bx) << "\" y2=\"" << sy(by)
            << "\"/>\n";
    };
    if (std::isfinite(box.xmin)) line(box.xmin, y0, box.xmin, y1);
    if (std::isfinite(box.xmax)) line(box.xmax, y0, box.xmax, y1);
    if (std::isfinite(box.ymin)) line(x0, box.ymin, x1, box.ymin);
    if (std::isfinite(box.ymax)) line(x0, box.ymax, x1, box.ymax);
    svg << "</g>\n";

    ContactGraph graph;
    if (options.contacts || options.jamming)
        graph = detail::collect_contacts(config, options.tol);

    svg << "<g id=\"discs\" stroke=\"#2b4c6f\" stroke-width=\"1\">\n";
    for (std::size_t i = 0; i < config.size(); ++i) {
        const char* fill = "#9ecae1";
        if (options.jamming) {
            switch (is_locally_jammed(graph.normals(i), options.tol.angle_slack).verdict) {
            case Verdict::jammed: fill = "#6baed6"; break;
            case Verdict::movable: fill = "#e6550d"; break;
            case Verdict::rattler: fill = "#fdae6b"; break;
            }
        }
        const Point2 p = config.centers[i];
        svg << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"" << fixed(r * k) << "\" fill=\""
            << fill << "\"/>\n";
    }
    svg << "</g>\n";

    if (options.contacts) {
        svg << "<g id=\"contacts\" stroke=\"#d62728\" stroke-width=\"1\">\n";
        for (std::size_t i = 0; i < graph.contacts.size(); ++i)
            for (const Contact& c : graph.contacts[i])
                if (c.other && *c.other > i)
                    line(config.centers[i].x, config.centers[i].y, config.centers[*c.other].x,
                         config.centers[*c.other].y);
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string report_json(const JammingReport& report, const ParamList& params)
{
    ordered_json j;
    j["report"] = "jamming";
    j["parameters"] = params_to_json(params);
    j["n"] = report.discs.size();
    j["stable"] = report.stable();
    j["movable_count"] = report.movable_count;
    j["rattler_count"] = report.rattler_count;
    j["contact_edges"] = report.contact_edges;
    j["wall_contacts"] = report.wall_contacts;
    j["overlap"] = ordered_json{{"max_penetration", report.audit.max_penetration},
                                {"min_gap", side_to_json(report.audit.min_gap)},
                                {"violations", report.audit.violations.size() + report.audit.wall_violations.size()}};
    ordered_json movable = ordered_json::array();
    ordered_json verdicts = ordered_json::array();
    for (const DiscVerdict& d : report.discs) {
        verdicts.push_back(verdict_name(d.verdict));
        if (d.verdict == Verdict::jammed)
            continue;
        ordered_json m;
        m["index"] = d.index;
        m["verdict"] = verdict_name(d.verdict);
        m["contacts"] = d.contact_count;
        m["witness"] = {d.witness->x, d.witness->y};
        m["witness_deg"] = wrapped_degrees(std::atan2(d.witness->y, d.witness->x));
        m["cone_deg"] = {wrapped_degrees(d.cone->lo), wrapped_degrees(d.cone->lo) + d.cone->width * 180.0 / std::numbers::pi};
        movable.push_back(std::move(m));
    }
    j["movable"] = std::move(movable);
    j["verdicts"] = std::move(verdicts);
    return j.dump(2) + "\n";
}

namespace {

ordered_json stats_json(const ChainStats& s)
{
    ordered_json j;
    j["proposed"] = s.proposed;
    j["accepted"] = s.accepted;
    j["acceptance_rate"] = s.acceptance_rate;
    j["max_center_displacement"] = s.max_center_displacement;
    return j;
}

} // namespace

std::string report_json(const ChainStats& stats, const ParamList& params)
{
    ordered_json j;
    j["report"] = "chain";
    j["rng"] = ChainRng::algorithm;
    j["parameters"] = params_to_json(params);
    j.update(stats_json(stats));
    ordered_json trace = ordered_json::array();
    for (const IntervalRecord& rec : stats.trace)
        trace.push_back({{"end_step", rec.end_step},
                         {"proposed", rec.proposed},
                         {"accepted", rec.accepted},
                         {"acceptance_rate", rec.acceptance_rate}});
    j["trace"] = std::move(trace);
    return j.dump(2) + "\n";
}

std::string report_json(const AssemblyMetrics& m, const ParamList& params)
{
    ordered_json j;
    j["report"] = "assembly";
    j["parameters"] = params_to_json(params);
    j["layout"] = m.layout;
    j["N"] = m.N;
    j["n"] = m.n;
    j["r"] = m.r;
    j["n_times_r"] = m.n_times_r;
    j["epsilon_used"] = m.epsilon_used;
    j["scale"] = m.scale;
    return j.dump(2) + "\n";
}

std::string report_json(const std::vector<EscapeRow>& rows, const ParamList& params)
{
    ordered_json j;
    j["report"] = "escape";
    j["rng"] = ChainRng::algorithm;
    j["parameters"] = params_to_json(params);
    ordered_json table = ordered_json::array();
    for (const EscapeRow& row : rows) {
        ordered_json r;
        r["factor"] = row.factor;
        r.update(stats_json(row.stats));
        table.push_back(std::move(r));
    }
    j["rows"] = std::move(table);
    return j.dump(2) + "\n";
}

template <class Report>
void write_report(const Report& report, const std::string& path, const ParamList& params)
{
    write_text_file(path, report_json(report, params));
}

template void write_report(const JammingReport&, const std::string&, const ParamList&);
template void write_report(const ChainStats&, const std::string&, const ParamList&);
template void write_report(const AssemblyMetrics&, const std::string&, const ParamList&);
template void write_report(const std::vector<EscapeRow>&, const std::string&, const ParamList&);

} // namespace discjam
