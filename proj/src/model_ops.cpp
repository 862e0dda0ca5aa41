#include "hyperprox/model_ops.hpp"

#include "hyperprox/strong.hpp"

namespace hyperprox {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        out.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

[[noreturn]] void malformed(const std::string& msg) { throw Error(ErrorKind::malformed_witness, msg); }

const char* boolean(bool b) { return b ? "true" : "false"; }

}  // namespace

TopologySpec resolve_topology_spec(const Model& model, std::string_view name) {
    if (name == "vietoris") return TopologySpec::vietoris();
    if (name == "trivial") return TopologySpec::trivial();
    if (name == "fell") {
        if (!model.ideal) throw Error(ErrorKind::spec_invalid, "fell needs an ideal in the model (or use fell:all)");
        return TopologySpec::fell(*model.ideal);
    }
    if (name == "fell:all") return TopologySpec::fell(CompactnessIdeal::all_closed(model.space));
    if (name == "far_miss") return TopologySpec::far_miss(model.prox);
    if (name == "sf_miss") return TopologySpec::sf_miss(model.prox);
    if (name == "far_miss_only") return TopologySpec::far_miss(model.prox, false);
    if (name == "sf_miss_only") return TopologySpec::sf_miss(model.prox, false);
    if (name.starts_with("hitmiss:")) {
        std::vector<Subset> family;
        for (const auto& ref : split(name.substr(8), '+')) {
            if (ref.empty()) continue;
            try {
                family.push_back(model.resolve(ref));
            } catch (const Error& e) {
                throw Error(ErrorKind::spec_invalid, std::string("hitmiss: ") + e.what());
            }
        }
        return TopologySpec::hit_and_miss(std::move(family));
    }
    throw Error(ErrorKind::spec_invalid, "unknown hypertopology '" + std::string(name) + "'");
}

std::string execute_call(const Model& model, const ReplayCall& call) {
    const auto& args = call.args;
    auto need = [&](std::size_t k) {
        if (args.size() != k) {
            malformed("op '" + call.op + "' takes " + std::to_string(k) + " argument(s), got " +
                      std::to_string(args.size()));
        }
    };
    auto subset = [&](std::size_t i) {
        try {
            return model.resolve(args[i]);
        } catch (const Error& e) {
            malformed("op '" + call.op + "': " + e.what());
        }
    };
    const ProximityRelation& prox = model.prox;

    if (call.op == "classification") {
        need(0);
        return to_string(check_axioms(prox).classification);
    }
    if (call.op == "lodato") {
        need(0);
        return boolean(check_axioms(prox).is_lodato());
    }
    if (call.op == "axiom") {
        need(1);
        const auto report = check_axioms(prox);
        for (Axiom a : kAllAxioms) {
            if (args[0] == to_string(a)) return report.passed(a) ? "pass" : "fail";
        }
        malformed("unknown axiom '" + args[0] + "'");
    }
    if (call.op == "compatible") {
        need(0);
        return boolean(is_compatible(prox).compatible);
    }
    if (call.op == "t1") {
        need(0);
        return boolean(model.space.is_t1());
    }
    if (call.op == "near" || call.op == "far") {
        need(2);
        const bool near = prox.near(subset(0), subset(1));
        return boolean(call.op == "near" ? near : !near);
    }
    if (call.op == "strongly_far") {
        need(2);
        return boolean(strongly_far(prox, subset(0), subset(1)).holds);
    }
    if (call.op == "hat_strongly_far") {
        need(2);
        return boolean(hat_strongly_far(model.space, subset(0), subset(1)).holds);
    }
    if (call.op == "subset_of") {
        need(2);
        return boolean(subset(0).subset_of(subset(1)));
    }
    if (call.op == "miss_inclusion") {
        need(2);
        const Subset b = subset(0);
        const Subset c = subset(1);
        if (!model.space.is_closed(b) || !model.space.is_closed(c)) malformed("miss_inclusion needs closed sets");
        auto hyper = Hyperspace::enumerate(model.space);
        const auto far = far_miss_set(*hyper, prox, model.space.complement(b));
        const auto sf = sf_miss_set(*hyper, prox, model.space.complement(c));
        return boolean(far.members.subset_of(sf.members));
    }
    if (call.op == "compare") {
        need(2);
        auto hyper = Hyperspace::enumerate(model.space);
        try {
            const auto left = build_topology(hyper, resolve_topology_spec(model, args[0]));
            const auto right = build_topology(hyper, resolve_topology_spec(model, args[1]));
            return to_string(compare(left, right).verdict);
        } catch (const CapExceeded&) {
            throw;
        } catch (const Error& e) {
            malformed(std::string("compare: ") + e.what());
        }
    }
    malformed("unknown replay op '" + call.op + "'");
}

}  // namespace hyperprox
