#include "vhfplan/plan_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "vhfplan/errors.hpp"

namespace vhfplan {

namespace {

using json = nlohmann::ordered_json;

double round6(double x) {
    return std::round(x * 1e6) / 1e6;
}

const char* mode_name(PlanMode m) {
    return m == PlanMode::Cell ? "cell" : "group";
}

const char* kind_name(GroupKind k) {
    return k == GroupKind::Big54 ? "big54" : "small7";
}

GroupKind kind_from(const std::string& s) {
    if (s == "big54")
        return GroupKind::Big54;
    if (s == "small7")
        return GroupKind::Small7;
    throw std::runtime_error("plan file: unknown group kind '" + s + "'");
}

CaseLabel case_from(const std::string& s) {
    for (CaseLabel c : {CaseLabel::EmergencySmall, CaseLabel::EmergencyLarge,
                        CaseLabel::MobileSmall, CaseLabel::MobileLarge,
                        CaseLabel::NoEffect})
        if (s == to_string(c))
            return c;
    throw std::runtime_error("plan file: unknown augmentation case '" + s + "'");
}

json augmentation_to_json(const ObstacleRecord& rec) {
    json a;
    a["case"] = to_string(rec.augmentation.case_label);
    a["obstacle"] = {{"x", round6(rec.obstacle.center.x)},
                     {"y", round6(rec.obstacle.center.y)},
                     {"radius_miles", round6(rec.obstacle.radius_miles)},
                     {"height_m", round6(rec.obstacle.height_m)}};
    a["added_repeaters"] = json::array();
    for (const auto& rep : rec.augmentation.added_repeaters)
        a["added_repeaters"].push_back({{"x", round6(rep.position.x)},
                                        {"y", round6(rep.position.y)},
                                        {"radius_miles", round6(rep.radius_miles)},
                                        {"note", rep.note}});
    a["affected_cells"] = rec.augmentation.affected_cells;
    a["warning"] = rec.augmentation.warning;
    return a;
}

ObstacleRecord augmentation_from_json(const json& a) {
    ObstacleRecord rec;
    rec.augmentation.case_label = case_from(a.at("case").get<std::string>());
    const auto& o = a.at("obstacle");
    rec.obstacle.center = {o.at("x").get<double>(), o.at("y").get<double>()};
    rec.obstacle.radius_miles = o.at("radius_miles").get<double>();
    rec.obstacle.height_m = o.at("height_m").get<double>();
    for (const auto& rep : a.at("added_repeaters")) {
        AddedRepeater r;
        r.position = {rep.at("x").get<double>(), rep.at("y").get<double>()};
        r.radius_miles = rep.at("radius_miles").get<double>();
        r.note = rep.at("note").get<std::string>();
        rec.augmentation.added_repeaters.push_back(std::move(r));
    }
    rec.augmentation.affected_cells = a.at("affected_cells").get<std::vector<int>>();
    rec.augmentation.warning = a.at("warning").get<std::string>();
    return rec;
}

} // namespace

std::string plan_to_json(const Plan& plan, const std::vector<ObstacleRecord>& augmentations) {
    json doc;
    doc["version"] = 1;
    doc["mode"] = mode_name(plan.mode);
    doc["band"] = {{"f_lo", round6(plan.channels.f_lo)}, {"f_hi", round6(plan.channels.f_hi)}};
    doc["delta_f"] = round6(plan.channels.delta_f);
    doc["duplex_offset"] = round6(plan.channels.duplex_offset);
    doc["reuse_min_miles"] = round6(plan.config.reuse_min_miles);
    doc["service_radius_miles"] = round6(plan.config.area_radius_miles);
    doc["cell_radius_miles"] = round6(plan.tess.r);
    doc["antenna_height_m"] = round6(plan.config.antenna_height_m);
    if (plan.config.coverage_cap_miles)
        doc["coverage_cap_miles"] = round6(*plan.config.coverage_cap_miles);
    else
        doc["coverage_cap_miles"] = nullptr;
    doc["pl_catalog_size"] = plan.config.pl_catalog_size;
    doc["seed"] = plan.config.seed;

    doc["cells"] = json::array();
    for (const auto& c : plan.tess.cells)
        doc["cells"].push_back({{"q", c.coord.q},
                                {"s", c.coord.s},
                                {"x", round6(c.center.x)},
                                {"y", round6(c.center.y)},
                                {"r", round6(c.r)}});

    doc["clusters"] = json::array();
    for (const auto& c : plan.clusters)
        doc["clusters"].push_back({{"id", c.id}, {"cells", c.cell_ids}, {"pl", c.pl_tone}});

    doc["groups"] = json::array();
    for (const auto& g : plan.groups)
        doc["groups"].push_back({{"gc", g.gc},
                                 {"kind", kind_name(g.kind)},
                                 {"clusters", g.cluster_ids},
                                 {"padded", g.padded}});

    doc["layout"] = {{"big_composites", plan.layout.big_composites},
                     {"standalone_big", plan.layout.standalone_big},
                     {"small_groups", plan.layout.small_groups},
                     {"padded_clusters", plan.layout.padded_clusters}};

    doc["users"] = json::array();
    for (const auto& u : plan.users) {
        json ju;
        if (u.gc > 0)
            ju["gc"] = u.gc;
        else
            ju["gc"] = nullptr;
        ju["pl"] = u.pl_tone;
        ju["channel"] = round6(u.channel_mhz);
        doc["users"].push_back(std::move(ju));
    }

    doc["notes"] = plan.notes;
    if (!augmentations.empty()) {
        doc["augmentations"] = json::array();
        for (const auto& rec : augmentations)
            doc["augmentations"].push_back(augmentation_to_json(rec));
    }
    return doc.dump(2) + "\n";
}

Plan plan_from_json(const std::string& text, std::vector<ObstacleRecord>* out_augmentations) {
    json doc = json::parse(text);
    if (doc.at("version").get<int>() != 1)
        throw std::runtime_error("plan file: unsupported version");

    Plan plan;
    const std::string mode = doc.at("mode").get<std::string>();
    if (mode == "cell")
        plan.mode = PlanMode::Cell;
    else if (mode == "group")
        plan.mode = PlanMode::Group;
    else
        throw std::runtime_error("plan file: unknown mode '" + mode + "'");

    PlanConfig& cfg = plan.config;
    cfg.f_lo = doc.at("band").at("f_lo").get<double>();
    cfg.f_hi = doc.at("band").at("f_hi").get<double>();
    cfg.delta_f = doc.at("delta_f").get<double>();
    cfg.reuse_min_miles = doc.at("reuse_min_miles").get<double>();
    cfg.area_radius_miles = doc.at("service_radius_miles").get<double>();
    cfg.antenna_height_m = doc.at("antenna_height_m").get<double>();
    if (!doc.at("coverage_cap_miles").is_null())
        cfg.coverage_cap_miles = doc.at("coverage_cap_miles").get<double>();
    cfg.pl_catalog_size = doc.at("pl_catalog_size").get<int>();
    cfg.seed = doc.at("seed").get<std::uint64_t>();
    cfg.mode = plan.mode == PlanMode::Cell ? PlanConfig::Mode::Cell : PlanConfig::Mode::Group;

    plan.channels = build_channel_table(cfg.f_lo, cfg.f_hi, cfg.delta_f);

    const double r = doc.at("cell_radius_miles").get<double>();
    plan.tess.r = r;
    plan.tess.R = cfg.area_radius_miles;
    int max_ring = 0;
    for (const auto& jc : doc.at("cells")) {
        Cell cell;
        cell.coord = {jc.at("q").get<int>(), jc.at("s").get<int>()};
        cell.center = hex_center(cell.coord, r); // exact geometry, file x/y is advisory
        cell.r = r;
        cell.repeater_id = static_cast<int>(plan.tess.cells.size());
        const double fx = jc.at("x").get<double>(), fy = jc.at("y").get<double>();
        if (std::abs(fx - cell.center.x) > 1e-5 || std::abs(fy - cell.center.y) > 1e-5)
            throw std::runtime_error("plan file: cell center disagrees with (q,s,r)");
        max_ring = std::max(max_ring, ring(cell.coord));
        plan.tess.index.emplace(cell.coord, cell.repeater_id);
        plan.tess.cells.push_back(std::move(cell));
    }
    plan.tess.n_L = max_ring;
    if (plan.tess.index.size() != plan.tess.cells.size())
        throw std::runtime_error("plan file: duplicate cell coordinates");

    for (const auto& jc : doc.at("clusters")) {
        Cluster c;
        c.id = jc.at("id").get<int>();
        c.cell_ids = jc.at("cells").get<std::vector<int>>();
        c.pl_tone = jc.at("pl").get<int>();
        plan.clusters.push_back(std::move(c));
    }

    for (const auto& jg : doc.at("groups")) {
        Group g;
        g.gc = jg.at("gc").get<int>();
        g.kind = kind_from(jg.at("kind").get<std::string>());
        g.cluster_ids = jg.at("clusters").get<std::vector<int>>();
        g.padded = jg.value("padded", false);
        for (int cid : g.cluster_ids)
            plan.clusters.at(cid).gc = g.gc;
        plan.groups.push_back(std::move(g));
    }

    const auto& jl = doc.at("layout");
    plan.layout.big_composites = jl.at("big_composites").get<int>();
    plan.layout.standalone_big = jl.at("standalone_big").get<int>();
    plan.layout.small_groups = jl.at("small_groups").get<int>();
    plan.layout.padded_clusters = jl.at("padded_clusters").get<int>();

    plan.rebuild_cell_index();

    // (gc, pl) identifies the cluster a user lives in
    std::unordered_map<long long, int> cluster_by_key;
    for (const auto& c : plan.clusters)
        cluster_by_key[(static_cast<long long>(c.gc) << 16) | c.pl_tone] = c.id;
    for (const auto& ju : doc.at("users")) {
        UserId u;
        u.gc = ju.at("gc").is_null() ? 0 : ju.at("gc").get<int>();
        u.pl_tone = ju.at("pl").get<int>();
        u.channel_mhz = ju.at("channel").get<double>();
        const auto it = cluster_by_key.find((static_cast<long long>(u.gc) << 16) | u.pl_tone);
        if (it == cluster_by_key.end())
            throw std::runtime_error("plan file: user references unknown (gc, pl) cluster");
        u.cluster_id = it->second;
        plan.users.push_back(std::move(u));
    }
    cfg.users = static_cast<int>(plan.users.size());

    if (doc.contains("notes"))
        plan.notes = doc.at("notes").get<std::vector<std::string>>();

    // Cell-mode partition counts are derivable from the cluster sizes.
    for (const auto& c : plan.clusters) {
        if (c.cell_ids.size() >= 2)
            ++plan.partition.triples;
        else
            ++plan.partition.singles;
    }

    if (out_augmentations && doc.contains("augmentations"))
        for (const auto& ja : doc.at("augmentations"))
            out_augmentations->push_back(augmentation_from_json(ja));
    return plan;
}

std::string log_to_jsonl(const SimResult& result) {
    std::ostringstream out;
    for (const auto& rec : result.log) {
        json line;
        line["msg_id"] = rec.msg_id;
        line["tick"] = rec.tick;
        line["repeater"] = rec.repeater;
        line["action"] = to_string(rec.action);
        line["frequency"] = round6(rec.frequency_mhz);
        line["pl"] = rec.pl;
        out << line.dump() << '\n';
    }
    return out.str();
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

void apply_key(PlanConfig& cfg, const std::string& key, const std::string& value) {
    auto as_double = [&] { return std::stod(value); };
    auto as_int = [&] { return std::stoi(value); };
    if (key == "users")
        cfg.users = as_int();
    else if (key == "area_radius_miles" || key == "R")
        cfg.area_radius_miles = as_double();
    else if (key == "antenna_height_m" || key == "H")
        cfg.antenna_height_m = as_double();
    else if (key == "coverage_cap_miles" || key == "cap") {
        if (value == "none" || value == "null")
            cfg.coverage_cap_miles.reset();
        else
            cfg.coverage_cap_miles = as_double();
    } else if (key == "f_lo")
        cfg.f_lo = as_double();
    else if (key == "f_hi")
        cfg.f_hi = as_double();
    else if (key == "delta_f")
        cfg.delta_f = as_double();
    else if (key == "pl_catalog_size")
        cfg.pl_catalog_size = as_int();
    else if (key == "mode") {
        if (value == "auto")
            cfg.mode = PlanConfig::Mode::Auto;
        else if (value == "cell")
            cfg.mode = PlanConfig::Mode::Cell;
        else if (value == "group")
            cfg.mode = PlanConfig::Mode::Group;
        else
            throw std::runtime_error("config: mode must be auto, cell or group");
    } else if (key == "auto_threshold_users")
        cfg.auto_threshold_users = as_int();
    else if (key == "reuse_min_miles")
        cfg.reuse_min_miles = as_double();
    else if (key == "seed")
        cfg.seed = std::stoull(value);
    else
        throw std::runtime_error("config: unknown key '" + key + "'");
}

} // namespace

PlanConfig config_from_text(const std::string& text, const PlanConfig& defaults) {
    PlanConfig cfg = defaults;
    const std::string body = trim(text);
    if (!body.empty() && body.front() == '{') {
        json doc = json::parse(body);
        for (const auto& [key, value] : doc.items()) {
            if (value.is_null()) {
                apply_key(cfg, key, "null");
                continue;
            }
            apply_key(cfg, key,
                      value.is_string() ? value.get<std::string>() : value.dump());
        }
        return cfg;
    }
    std::istringstream in(body);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected key = value, got '" + line + "'");
        apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << content;
}

} // namespace vhfplan
