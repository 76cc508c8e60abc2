#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "bigp/algorithm1.hpp"
#include "bigp/algorithm2.hpp"
#include "bigp/metrics.hpp"
#include "bigp/router_core.hpp"
#include "bigp/scenario.hpp"
#include "bigp/sim.hpp"
#include "bigp/wire_format.hpp"

namespace py = pybind11;
using namespace bigp;

namespace {

std::vector<std::uint8_t> to_bytes(const py::bytes& b) {
  std::string s = b;
  return std::vector<std::uint8_t>(s.begin(), s.end());
}

py::bytes from_bytes(const std::vector<std::uint8_t>& v) {
  return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

MessageBody body_from_object(const py::object& obj) {
  if (py::isinstance<Hello>(obj)) return obj.cast<Hello>();
  if (py::isinstance<UpdateA>(obj)) return obj.cast<UpdateA>();
  if (py::isinstance<UpdateB>(obj)) return obj.cast<UpdateB>();
  if (py::isinstance<Data>(obj)) return obj.cast<Data>();
  throw py::type_error("body must be Hello, UpdateA, UpdateB or Data");
}

py::object body_to_object(const MessageBody& body) {
  return std::visit([](const auto& b) { return py::cast(b); }, body);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "BIGP protocol library and deterministic simulator";

  py::register_exception<WireError>(m, "WireError");
  py::register_exception<ScenarioError>(m, "ScenarioError");
  py::register_exception<SimError>(m, "SimError");
  py::register_exception<RoutingError>(m, "RoutingError");

  py::class_<Prefix>(m, "Prefix")
      .def(py::init([](const std::string& s) {
        auto p = parse_prefix(s);
        if (!p) throw py::value_error("bad prefix: " + s);
        return *p;
      }))
      .def_readwrite("addr", &Prefix::addr)
      .def_readwrite("len", &Prefix::len)
      .def("__str__", &Prefix::str)
      .def("__repr__", [](const Prefix& p) { return "Prefix('" + p.str() + "')"; })
      .def("__eq__", [](const Prefix& a, const Prefix& b) { return a == b; });

  py::class_<BigpHeader>(m, "Header")
      .def(py::init([](bool cbi, bool cbb, Asn asn, int msg_type,
                       RouterId router_id) {
             BigpHeader h;
             h.cbi = cbi;
             h.cbb = cbb;
             h.asn = asn;
             h.msg_type = static_cast<MsgType>(msg_type);
             h.router_id = router_id;
             return h;
           }),
           py::arg("cbi"), py::arg("cbb"), py::arg("asn"), py::arg("msg_type"),
           py::arg("router_id"))
      .def_readwrite("version", &BigpHeader::version)
      .def_readwrite("cbi", &BigpHeader::cbi)
      .def_readwrite("cbb", &BigpHeader::cbb)
      .def_readwrite("asn", &BigpHeader::asn)
      .def_readwrite("router_id", &BigpHeader::router_id)
      .def_readonly("payload_len", &BigpHeader::payload_len)
      .def_readonly("checksum", &BigpHeader::checksum)
      .def_property_readonly(
          "msg_type",
          [](const BigpHeader& h) { return static_cast<int>(h.msg_type); })
      .def("__eq__",
           [](const BigpHeader& a, const BigpHeader& b) { return a == b; });

  py::class_<Hello>(m, "Hello")
      .def(py::init([](std::uint8_t priority, std::vector<RouterId> seen) {
             Hello h;
             h.priority = priority;
             h.seen_neighbors = std::move(seen);
             return h;
           }),
           py::arg("priority") = 0,
           py::arg("seen_neighbors") = std::vector<RouterId>{})
      .def_readwrite("priority", &Hello::priority)
      .def_readwrite("seen_neighbors", &Hello::seen_neighbors)
      .def("__eq__", [](const Hello& a, const Hello& b) { return a == b; });

  py::class_<Lsa>(m, "Lsa")
      .def(py::init<>())
      .def_readwrite("origin_id", &Lsa::origin_id)
      .def_readwrite("seq", &Lsa::seq)
      .def_readwrite("links", &Lsa::links)
      .def_readwrite("prefixes", &Lsa::prefixes)
      .def_readwrite("is_asbr", &Lsa::is_asbr)
      .def_readwrite("is_stub", &Lsa::is_stub)
      .def_readwrite("age_at", &Lsa::age_at)
      .def("__eq__", [](const Lsa& a, const Lsa& b) { return a == b; });

  py::class_<UpdateA>(m, "UpdateA")
      .def(py::init([](std::vector<Lsa> lsas) { return UpdateA{std::move(lsas)}; }),
           py::arg("lsas") = std::vector<Lsa>{})
      .def_readwrite("lsas", &UpdateA::lsas)
      .def("__eq__", [](const UpdateA& a, const UpdateA& b) { return a == b; });

  py::class_<PathCandidate>(m, "PathCandidate")
      .def(py::init([](const std::string& prefix, std::vector<Asn> as_path,
                       std::uint32_t local_pref, RouterId from_peer,
                       bool learned_internal) {
             PathCandidate c;
             auto p = parse_prefix(prefix);
             if (!p) throw py::value_error("bad prefix: " + prefix);
             c.prefix = *p;
             c.as_path = std::move(as_path);
             c.local_pref = local_pref;
             c.from_peer = from_peer;
             c.learned_internal = learned_internal;
             return c;
           }),
           py::arg("prefix"), py::arg("as_path") = std::vector<Asn>{},
           py::arg("local_pref") = 100, py::arg("from_peer") = 0,
           py::arg("learned_internal") = false)
      .def_readwrite("prefix", &PathCandidate::prefix)
      .def_readwrite("as_path", &PathCandidate::as_path)
      .def_readwrite("local_pref", &PathCandidate::local_pref)
      .def_readwrite("from_peer", &PathCandidate::from_peer)
      .def_readwrite("learned_internal", &PathCandidate::learned_internal)
      .def("__eq__",
           [](const PathCandidate& a, const PathCandidate& b) { return a == b; });

  py::class_<UpdateB>(m, "UpdateB")
      .def(py::init([](std::vector<PathCandidate> advertised,
                       std::vector<Prefix> withdrawn) {
             return UpdateB{std::move(advertised), std::move(withdrawn)};
           }),
           py::arg("advertised") = std::vector<PathCandidate>{},
           py::arg("withdrawn") = std::vector<Prefix>{})
      .def_readwrite("advertised", &UpdateB::advertised)
      .def_readwrite("withdrawn", &UpdateB::withdrawn)
      .def("__eq__", [](const UpdateB& a, const UpdateB& b) { return a == b; });

  py::class_<Data>(m, "Data")
      .def(py::init([](std::uint32_t dest_addr, std::uint8_t hop_count,
                       std::uint32_t payload_tag) {
             return Data{dest_addr, hop_count, payload_tag};
           }),
           py::arg("dest_addr") = 0, py::arg("hop_count") = 0,
           py::arg("payload_tag") = 0)
      .def_readwrite("dest_addr", &Data::dest_addr)
      .def_readwrite("hop_count", &Data::hop_count)
      .def_readwrite("payload_tag", &Data::payload_tag)
      .def("__eq__", [](const Data& a, const Data& b) { return a == b; });

  m.attr("HELLO") = static_cast<int>(MsgType::HELLO);
  m.attr("UPDATE_A") = static_cast<int>(MsgType::UPDATE_A);
  m.attr("UPDATE_B") = static_cast<int>(MsgType::UPDATE_B);
  m.attr("DATA") = static_cast<int>(MsgType::DATA);
  m.attr("DEFAULT_ASN_SPLIT") = kDefaultAsnSplit;

  m.def("compute_checksum",
        [](const py::bytes& b) { return compute_checksum(to_bytes(b)); },
        "Ones'-complement internet checksum of a byte string.");

  m.def("encode",
        [](const BigpHeader& h, const py::object& body) {
          return from_bytes(encode(h, body_from_object(body)));
        },
        py::arg("header"), py::arg("body"));

  m.def("decode",
        [](const py::bytes& b) {
          auto [h, body] = decode(to_bytes(b));
          return py::make_tuple(h, body_to_object(body));
        },
        py::arg("data"));

  m.def("classify_mode",
        [](Asn asn, Asn asn_split) {
          return std::string(to_string(classify_mode(asn, asn_split)));
        },
        py::arg("asn"), py::arg("asn_split") = kDefaultAsnSplit);

  m.def("stamp_header",
        [](const std::string& locality, Asn domain_asn, RouterId router_id,
           int msg_type, Asn asn_split) {
          RouterConfig cfg;
          cfg.router_id = router_id;
          cfg.domain_asn = domain_asn;
          cfg.asn_split = asn_split;
          Mode mode = locality == "INTER" ? Mode::INTER : Mode::INTRA;
          return stamp_header(mode, cfg, static_cast<MsgType>(msg_type));
        },
        py::arg("locality"), py::arg("domain_asn"), py::arg("router_id") = 1,
        py::arg("msg_type") = static_cast<int>(MsgType::DATA),
        py::arg("asn_split") = kDefaultAsnSplit);

  m.def("best_path",
        [](const std::vector<PathCandidate>& cands) {
          if (cands.empty()) throw py::value_error("candidates must be nonempty");
          return best_path(cands);
        },
        py::arg("candidates"));

  m.def("spf",
        [](const std::vector<Lsa>& lsas, RouterId self_id) {
          Lsdb lsdb;
          for (const Lsa& l : lsas) lsdb.store_if_newer(l);
          RouterConfig cfg;
          cfg.router_id = self_id;
          cfg.domain_asn = 1;
          SpfResult r = run_spf(lsdb, self_id, cfg);
          py::dict nodes;
          for (const auto& [id, fh_cost] : r.node_paths)
            nodes[py::int_(id)] = py::make_tuple(fh_cost.first, fh_cost.second);
          py::list entries;
          for (const TableAEntry& e : r.entries) {
            py::dict d;
            d["prefix"] = e.prefix.str();
            d["next_hop"] =
                e.next_hop ? py::cast(*e.next_hop) : py::object(py::none());
            d["cost"] = e.cost;
            entries.append(d);
          }
          py::dict out;
          out["node_paths"] = nodes;
          out["entries"] = entries;
          return out;
        },
        py::arg("lsas"), py::arg("self_id"),
        "Shortest paths over the symmetric-link subset of the given LSAs.");

  m.def("run_scenario",
        [](const std::string& text, std::optional<double> until_s,
           std::uint64_t seed,
           const std::vector<std::pair<std::string, double>>& dumps) {
          Scenario sc = load_scenario(text);
          std::optional<SimTime> until;
          if (until_s) until = static_cast<SimTime>(*until_s * kMsPerSec + 0.5);
          std::vector<DumpRequest> reqs;
          for (const auto& [name, t] : dumps) {
            auto id = parse_router_name(name);
            if (!id) throw py::value_error("bad router name: " + name);
            reqs.push_back(
                DumpRequest{*id, static_cast<SimTime>(t * kMsPerSec + 0.5)});
          }
          RunOutputs out = run_scenario(sc, until, seed, reqs);
          py::dict d;
          d["metrics_json"] = metrics_to_json(out.metrics);
          d["trace"] = out.trace;
          d["dumps"] = out.dumps;
          return d;
        },
        py::arg("text"), py::arg("until_s") = py::none(), py::arg("seed") = 0,
        py::arg("dumps") = std::vector<std::pair<std::string, double>>{},
        "Load and run a scenario document; returns metrics JSON, the event "
        "trace and any requested table dumps.");
}
