// polyinv: batch front end for polyhedral image/preimage analysis of
// piecewise-affine neural networks and interval contraction.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "polyinv/geometry.hpp"
#include "polyinv/intervals.hpp"
#include "polyinv/json_io.hpp"
#include "polyinv/network.hpp"
#include "polyinv/preimage.hpp"
#include "polyinv/propagate.hpp"

namespace {

using namespace polyinv;

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("POLYINV_LOG");
        if (env == nullptr) return LogLevel::Error;
        const std::string s = env;
        if (s == "debug") return LogLevel::Debug;
        if (s == "info") return LogLevel::Info;
        return LogLevel::Error;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::Info) std::cerr << "[polyinv] " << msg << '\n';
}

void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::Debug) std::cerr << "[polyinv] " << msg << '\n';
}

struct AnalysisRequest {
    std::string command;
    std::string network_path;
    std::string set_spec;
    std::string clip_spec;
    std::string in_box_spec;
    std::string out_box_spec;
    std::string input_spec;
    std::vector<std::string> points;
    std::string points_file;
    std::string output_path;
    std::string strategy = "dfs";
    int max_iter = 20;
    int threads = 1;
    std::uint64_t seed = 0;  // reserved for sampling-based extensions
    bool expect_nonempty = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Spec arguments name a file or carry the spec inline (JSON, or the box
// shorthand "[a,b]x[c,d]").
std::string resolve_spec(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
    return arg;
}

bool looks_like_shorthand(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '[';
    }
    return false;
}

PolyUnion parse_set_arg(const std::string& arg, int expected_dim) {
    const std::string text = resolve_spec(arg);
    if (looks_like_shorthand(text)) {
        const Box b = parse_box_shorthand(text);
        if (expected_dim >= 0 && b.dim() != expected_dim) {
            throw std::invalid_argument("set argument has the wrong dimension: " + arg);
        }
        return PolyUnion::single(to_polyhedron(b));
    }
    return parse_set_spec(text, expected_dim);
}

Box parse_box_arg(const std::string& arg, int expected_dim) {
    const std::string text = resolve_spec(arg);
    if (looks_like_shorthand(text)) {
        const Box b = parse_box_shorthand(text);
        if (expected_dim >= 0 && b.dim() != expected_dim) {
            throw std::invalid_argument("box argument has the wrong dimension: " + arg);
        }
        return b;
    }
    return parse_box_spec(text, expected_dim);
}

void write_output(const AnalysisRequest& req, const std::string& content) {
    if (req.output_path.empty()) {
        std::cout << content << '\n';
        return;
    }
    std::ofstream out(req.output_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + req.output_path);
    out << content << '\n';
}

Eigen::VectorXd parse_point(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            vals.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad point coordinate: " + tok);
        }
    }
    if (vals.empty()) throw std::invalid_argument("empty point: " + text);
    Eigen::VectorXd v(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) v(static_cast<Eigen::Index>(i)) = vals[i];
    return v;
}

PolyUnion clip_union(const PolyUnion& u, const Box& clip) {
    const Polyhedron clip_poly = to_polyhedron(clip);
    PolyUnion out(u.dim);
    for (const Polyhedron& part : u.parts) {
        Polyhedron clipped = intersect(part, clip_poly);
        if (!is_empty(clipped)) out.parts.push_back(remove_redundant(clipped));
    }
    return out;
}

int finish_union(const AnalysisRequest& req, const PolyUnion& result) {
    write_output(req, to_json(result));
    if (req.expect_nonempty && result.parts.empty()) {
        std::cerr << "polyinv: result is empty but --expect-nonempty was given\n";
        return 1;
    }
    return 0;
}

// points file: JSON array of arrays of numbers
std::vector<Eigen::VectorXd> parse_points_file(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("points file: malformed JSON: ") + e.what());
    }
    if (!j.is_array()) throw std::invalid_argument("points file: expected an array of points");
    std::vector<Eigen::VectorXd> points;
    for (const auto& jp : j) {
        if (!jp.is_array() || jp.empty()) {
            throw std::invalid_argument("points file: each point must be a nonempty array");
        }
        Eigen::VectorXd v(jp.size());
        for (std::size_t i = 0; i < jp.size(); ++i) {
            if (!jp[i].is_number()) {
                throw std::invalid_argument("points file: coordinates must be numbers");
            }
            v(static_cast<Eigen::Index>(i)) = jp[i].get<double>();
        }
        points.push_back(std::move(v));
    }
    return points;
}

int run_eval(const AnalysisRequest& req) {
    const Network net = load_network_file(req.network_path);
    std::vector<Eigen::VectorXd> inputs;
    for (const std::string& p : req.points) inputs.push_back(parse_point(p));
    if (!req.points_file.empty()) {
        for (auto& v : parse_points_file(read_file(req.points_file))) {
            inputs.push_back(std::move(v));
        }
    }
    if (inputs.empty()) throw std::invalid_argument("eval: no input points given");
    std::string out = "{\"outputs\":[";
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (inputs[i].size() != net.in_dim()) {
            throw std::invalid_argument("eval: point dimension mismatch");
        }
        if (i) out += ',';
        const Eigen::VectorXd y = eval(net, inputs[i]);
        out += '[';
        for (Eigen::Index j = 0; j < y.size(); ++j) {
            if (j) out += ',';
            out += format_number(y(j));
        }
        out += ']';
    }
    out += "]}";
    write_output(req, out);
    return 0;
}

int run(const AnalysisRequest& req) {
    if (req.command == "eval") return run_eval(req);

    if (req.command == "plot-data") {
        const std::string text = resolve_spec(req.input_spec);
        PolyUnion u = parse_set_spec(text);
        if (u.dim != 2) throw std::invalid_argument("plot-data: sets must be 2-D");
        if (!req.clip_spec.empty()) {
            u = clip_union(u, parse_box_arg(req.clip_spec, 2));
        }
        std::string out;
        bool first = true;
        for (const Polyhedron& part : u.parts) {
            if (!first) out += '\n';
            first = false;
            for (const Eigen::Vector2d& v : vertices_2d(part)) {
                out += format_number(v.x());
                out += ' ';
                out += format_number(v.y());
                out += '\n';
            }
        }
        if (!out.empty() && out.back() == '\n') out.pop_back();
        write_output(req, out);
        return 0;
    }

    const Network net = load_network_file(req.network_path);
    log_debug("loaded network with " + std::to_string(net.layers.size()) + " layers");

    if (req.command == "image") {
        const PolyUnion x = parse_set_arg(req.set_spec, net.in_dim());
        const PolyUnion result = network_image(net, x, req.threads);
        log_info("image: " + std::to_string(result.parts.size()) + " parts");
        return finish_union(req, result);
    }
    if (req.command == "preimage") {
        const PolyUnion z = parse_set_arg(req.set_spec, net.out_dim());
        PolyUnion result = preimage_network(z, net, req.threads);
        if (!req.clip_spec.empty()) {
            result = clip_union(result, parse_box_arg(req.clip_spec, net.in_dim()));
        }
        log_info("preimage: " + std::to_string(result.parts.size()) + " parts");
        return finish_union(req, result);
    }
    if (req.command == "preimage-under") {
        const PolyUnion z = parse_set_arg(req.set_spec, net.out_dim());
        const SearchOrder order =
            req.strategy == "bfs" ? SearchOrder::BreadthFirst : SearchOrder::DepthFirst;
        const std::optional<Polyhedron> part = preimage_underapprox(z, net, order);
        PolyUnion result(net.in_dim());
        if (part) result.parts.push_back(*part);
        return finish_union(req, result);
    }
    if (req.command == "preimage-box") {
        const PolyUnion z = parse_set_arg(req.set_spec, net.out_dim());
        const PolyUnion result = preimage_overapprox_box(z, net);
        return finish_union(req, result);
    }
    if (req.command == "contract") {
        const Box in_box = parse_box_arg(req.in_box_spec, net.in_dim());
        const Box out_box = parse_box_arg(req.out_box_spec, net.out_dim());
        const ContractResult result =
            forward_backward_contract(net, in_box, out_box, req.max_iter);
        log_info("contract: " + std::to_string(result.trace.iterations.size() - 1) +
                 " iterations");
        write_output(req, to_json(result.trace));
        return 0;
    }
    throw std::invalid_argument("unknown command: " + req.command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact polyhedral images/preimages and interval contraction for "
                 "piecewise-affine neural networks"};
    app.require_subcommand(1);

    AnalysisRequest req;
    app.add_option("--seed", req.seed, "RNG seed for sampling-based extensions")
        ->capture_default_str();
    app.add_option("--threads", req.threads, "Worker threads for branch exploration")
        ->capture_default_str();

    auto add_network = [&](CLI::App* cmd) {
        cmd->add_option("--network", req.network_path, "Network JSON file")->required();
    };
    auto add_set = [&](CLI::App* cmd) {
        cmd->add_option("--set", req.set_spec,
                        "Set spec: file, inline JSON, or box shorthand \"[a,b]x[c,d]\"")
            ->required();
    };
    auto add_common_out = [&](CLI::App* cmd) {
        cmd->add_option("--output", req.output_path, "Write the result here (default stdout)");
    };
    auto add_expect = [&](CLI::App* cmd) {
        cmd->add_flag("--expect-nonempty", req.expect_nonempty,
                      "Exit with status 1 if the result is empty");
    };

    CLI::App* c_eval = app.add_subcommand("eval", "Evaluate the network on input points");
    add_network(c_eval);
    c_eval->add_option("--point", req.points, "Input point as comma-separated coordinates");
    c_eval->add_option("--points-file", req.points_file, "JSON array of input points");
    add_common_out(c_eval);

    CLI::App* c_image = app.add_subcommand("image", "Exact forward image of a set");
    add_network(c_image);
    add_set(c_image);
    add_expect(c_image);
    add_common_out(c_image);

    CLI::App* c_pre = app.add_subcommand("preimage", "Exact preimage of a set");
    add_network(c_pre);
    add_set(c_pre);
    c_pre->add_option("--clip", req.clip_spec, "Intersect every part with this box");
    add_expect(c_pre);
    add_common_out(c_pre);

    CLI::App* c_under =
        app.add_subcommand("preimage-under", "Single-branch preimage under-approximation");
    add_network(c_under);
    add_set(c_under);
    c_under->add_option("--strategy", req.strategy, "Search order: dfs or bfs")
        ->check(CLI::IsMember({"dfs", "bfs"}))
        ->capture_default_str();
    add_expect(c_under);
    add_common_out(c_under);

    CLI::App* c_box =
        app.add_subcommand("preimage-box", "Box-approximated preimage over-approximation");
    add_network(c_box);
    add_set(c_box);
    add_expect(c_box);
    add_common_out(c_box);

    CLI::App* c_contract =
        app.add_subcommand("contract", "Forward-backward interval contraction");
    add_network(c_contract);
    c_contract->add_option("--in-box", req.in_box_spec, "Input box")->required();
    c_contract->add_option("--out-box", req.out_box_spec, "Output box")->required();
    c_contract->add_option("--max-iter", req.max_iter, "Iteration limit")
        ->capture_default_str();
    add_common_out(c_contract);

    CLI::App* c_plot =
        app.add_subcommand("plot-data", "Convert a 2-D union to polygon vertex lists");
    c_plot->add_option("--input", req.input_spec, "Union JSON: file or inline")->required();
    c_plot->add_option("--clip", req.clip_spec, "Clip box applied before vertex enumeration");
    add_common_out(c_plot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    req.command = app.get_subcommands().front()->get_name();
    try {
        return run(req);
    } catch (const std::exception& e) {
        std::cerr << "polyinv: " << e.what() << '\n';
        return 2;
    }
}
