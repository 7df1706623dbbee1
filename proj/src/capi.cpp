#include "ncbmo.h"

#include <string>

#include "json.hpp"
#include "ncbmo/bmo.hpp"
#include "ncbmo/qtorus.hpp"
#include "ncbmo/suites.hpp"
#include "ncbmo/transference.hpp"

using namespace ncbmo;

struct ncbmo_result {
  std::string json;
  int status = 0;  // 0 all checks pass
};

namespace {

thread_local std::string g_last_error;

int wrap(ncbmo_result** out, int (*body)(const void*, ncbmo_result**),
         const void* ctx) {
  if (!out) {
    g_last_error = "null output pointer";
    return 2;
  }
  *out = nullptr;
  try {
    g_last_error.clear();
    return body(ctx, out);
  } catch (const Error& e) {
    g_last_error = std::string(e.code) + ": " + e.what();
    return 2;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return 2;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return 3;
  }
}

}  // namespace

extern "C" {

const char* ncbmo_version(void) { return "0.1.0"; }

const char* ncbmo_last_error(void) { return g_last_error.c_str(); }

int ncbmo_run_suite(const char* config_json, ncbmo_result** out) {
  struct Ctx {
    const char* cfg;
  } ctx{config_json};
  return wrap(out,
              [](const void* p, ncbmo_result** o) {
                auto* c = static_cast<const Ctx*>(p);
                if (!c->cfg) throw InvalidParams("null config");
                SuiteConfig cfg = SuiteConfig::from_json(c->cfg);
                SuiteReport rep = run_suite(cfg);
                auto* r = new ncbmo_result;
                r->json = rep.to_json();
                r->status = rep.pass() ? 0 : 1;
                *o = r;
                return r->status;
              },
              &ctx);
}

int ncbmo_bmo(const char* matrix_json, const char* semigroup_json,
              const char* side, ncbmo_result** out) {
  struct Ctx {
    const char *m, *s, *side;
  } ctx{matrix_json, semigroup_json, side};
  return wrap(out,
              [](const void* p, ncbmo_result** o) {
                auto* c = static_cast<const Ctx*>(p);
                if (!c->m || !c->s) throw InvalidParams("null input");
                CMatrix f = matrix_from_json(c->m);
                SemigroupSpec S = SemigroupSpec::from_json(c->s);
                Side side = Side::Column;
                std::string sd = c->side ? c->side : "column";
                if (sd == "row")
                  side = Side::Row;
                else if (sd == "max")
                  side = Side::Max;
                else if (sd != "column")
                  throw InvalidParams("side must be column|row|max");
                BmoReport rep =
                    bmo_semigroup_norm(f, S, TGrid::default_grid(), side);
                auto* r = new ncbmo_result;
                r->json = rep.to_json();
                *o = r;
                return 0;
              },
              &ctx);
}

int ncbmo_qtorus(const char* op, const char* series_json, double arg,
                 ncbmo_result** out) {
  struct Ctx {
    const char *op, *s;
    double arg;
  } ctx{op, series_json, arg};
  return wrap(out,
              [](const void* p, ncbmo_result** o) {
                auto* c = static_cast<const Ctx*>(p);
                if (!c->op || !c->s) throw InvalidParams("null input");
                TwistedSeries f = TwistedSeries::from_json(c->s);
                std::string op = c->op;
                nlohmann::json j;
                j["op"] = op;
                if (op == "trace") {
                  cplx v = tw_trace(f);
                  j["re"] = v.real();
                  j["im"] = v.imag();
                } else if (op == "adjoint") {
                  j["series"] = nlohmann::json::parse(tw_adjoint(f).to_json());
                } else if (op == "heat") {
                  j["series"] = nlohmann::json::parse(
                      qt_heat_apply(f, c->arg).to_json());
                } else if (op == "intertwine") {
                  j["defect"] = sigma_intertwine_check(f, c->arg);
                } else if (op == "gnsnorm") {
                  long L = c->arg > 0 ? (long)c->arg
                                      : f.support_radius() + 8;
                  j["value"] = gns_opnorm(f, GnsBox{L});
                  j["L"] = L;
                } else {
                  throw InvalidParams("unknown qtorus op: " + op);
                }
                auto* r = new ncbmo_result;
                r->json = j.dump();
                *o = r;
                return 0;
              },
              &ctx);
}

int ncbmo_transfer(const char* group, const char* kernel_json,
                   ncbmo_result** out) {
  struct Ctx {
    const char *g, *k;
  } ctx{group, kernel_json};
  return wrap(out,
              [](const void* p, ncbmo_result** o) {
                auto* c = static_cast<const Ctx*>(p);
                if (!c->g) throw InvalidParams("null group");
                std::string gs = c->g;
                FiniteGroupTable G = gs.find('{') != std::string::npos
                                         ? FiniteGroupTable::from_json(gs)
                                         : FiniteGroupTable::named(gs);
                GroupKernel k;
                if (c->k) {
                  nlohmann::json kj = nlohmann::json::parse(c->k);
                  for (const auto& row : kj)
                    k.values.push_back(
                        cplx(row.at(0).get<double>(), row.at(1).get<double>()));
                } else {
                  k.values.assign((size_t)G.order, 0.0);
                  k.values[(size_t)G.identity] = 1.0;
                }
                auto row = transference_check(G, k, regular_rep(G));
                nlohmann::json j;
                j["v_norm"] = row.v_norm;
                j["t_norm"] = row.t_norm;
                j["ratio"] = row.ratio;
                j["pass"] = row.pass;
                auto* r = new ncbmo_result;
                r->json = j.dump();
                r->status = row.pass ? 0 : 1;
                *o = r;
                return r->status;
              },
              &ctx);
}

const char* ncbmo_result_json(const ncbmo_result* r) {
  return r ? r->json.c_str() : "";
}

int ncbmo_result_status(const ncbmo_result* r) { return r ? r->status : 2; }

void ncbmo_result_free(ncbmo_result* r) { delete r; }

}  // extern "C"
