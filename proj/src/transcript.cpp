#include <json.hpp>

#include "qsm/protocol.hpp"

namespace qsm {

namespace {

using nlohmann::json;

json message_to_json(const ClassicalMessage& m) {
    json j;
    j["sender"] = m.sender;
    j["receiver"] = m.receiver;
    if (m.kind == ClassicalMessage::Kind::teleport_correction) {
        j["kind"] = "teleport_correction";
        j["ell"] = m.ell;
        j["s"] = m.s;
    } else {
        j["kind"] = "measurement_report";
        j["z"] = m.z;
    }
    return j;
}

ClassicalMessage message_from_json(const json& j) {
    ClassicalMessage m;
    m.sender = j.at("sender").get<std::string>();
    m.receiver = j.at("receiver").get<std::string>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "teleport_correction") {
        m.kind = ClassicalMessage::Kind::teleport_correction;
        m.ell = j.at("ell").get<std::int64_t>();
        m.s = j.at("s").get<std::int64_t>();
    } else if (kind == "measurement_report") {
        m.kind = ClassicalMessage::Kind::measurement_report;
        m.z = j.at("z").get<std::int64_t>();
    } else {
        throw std::invalid_argument("transcript: unknown message kind '" + kind + "'");
    }
    return m;
}

} // namespace

std::string ProtocolTranscript::to_json() const {
    json j;
    j["n"] = n;
    j["kappa"] = kappa;
    j["d"] = d;
    j["gamma"] = gamma;
    j["backend"] = backend_name(backend);
    j["seed"] = seed;
    json cl = json::array();
    for (const ClientRecord& c : clients) {
        json jc;
        jc["x"] = c.x;
        jc["y"] = c.y;
        if (c.correction) {
            jc["correction"] = {{"ell", c.correction->ell}, {"s", c.correction->s}};
        } else {
            jc["correction"] = nullptr;
        }
        jc["z"] = c.z;
        cl.push_back(std::move(jc));
    }
    j["clients"] = std::move(cl);
    json ms = json::array();
    for (const ClassicalMessage& m : messages) ms.push_back(message_to_json(m));
    j["messages"] = std::move(ms);
    j["z"] = z;
    j["estimate"] = estimate;
    return j.dump();
}

ProtocolTranscript ProtocolTranscript::from_json(const std::string& text) {
    const json j = json::parse(text);
    ProtocolTranscript t;
    t.n = j.at("n").get<std::int64_t>();
    t.kappa = j.at("kappa").get<std::int64_t>();
    t.d = j.at("d").get<std::int64_t>();
    t.gamma = j.at("gamma").get<double>();
    t.backend = backend_from_name(j.at("backend").get<std::string>());
    t.seed = j.at("seed").get<std::uint64_t>();
    for (const json& jc : j.at("clients")) {
        ClientRecord c;
        c.x = jc.at("x").get<std::int64_t>();
        c.y = jc.at("y").get<std::int64_t>();
        if (!jc.at("correction").is_null()) {
            TeleportCorrection corr;
            corr.ell = jc.at("correction").at("ell").get<std::int64_t>();
            corr.s = jc.at("correction").at("s").get<std::int64_t>();
            c.correction = corr;
        }
        c.z = jc.at("z").get<std::int64_t>();
        t.clients.push_back(std::move(c));
    }
    for (const json& jm : j.at("messages")) t.messages.push_back(message_from_json(jm));
    t.z = j.at("z").get<std::int64_t>();
    t.estimate = j.at("estimate").get<double>();
    return t;
}

} // namespace qsm
