#include "heckecf/heckecf.h"

#include <memory>
#include <string>

#include "heckecf/report.hpp"

struct hcf_field {
  heckecf::Field field;
};

struct hcf_tree {
  heckecf::DecoratedTree tree;
};

struct hcf_attractor {
  heckecf::AttractorResult result;
};

struct hcf_buffer {
  std::string data;
};

namespace {

thread_local std::string g_last_error;

hcf_status fail(hcf_status s, const char* what) {
  g_last_error = what;
  return s;
}

template <class Fn>
hcf_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return HCF_OK;
  } catch (const heckecf::UsageError& e) {
    return fail(HCF_USAGE, e.what());
  } catch (const heckecf::BudgetError& e) {
    return fail(HCF_BUDGET, e.what());
  } catch (const std::domain_error& e) {
    return fail(HCF_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(HCF_USAGE, e.what());
  } catch (const std::out_of_range& e) {
    return fail(HCF_USAGE, e.what());
  } catch (const std::exception& e) {
    return fail(HCF_INTERNAL, e.what());
  } catch (...) {
    return fail(HCF_INTERNAL, "unknown exception");
  }
}

void require(const void* p, const char* name) {
  if (!p) throw heckecf::UsageError(std::string(name) + " must not be null");
}

heckecf::Format format_of(const char* f) {
  require(f, "format");
  return heckecf::parse_format(f);
}

template <class Fn>
hcf_status report(hcf_buffer** out, Fn&& fn) {
  return guarded([&] {
    require(out, "out");
    *out = new hcf_buffer{fn()};
  });
}

heckecf::DensityRequest density_request(const hcf_density_request* req) {
  require(req, "request");
  heckecf::DensityRequest r;
  r.picture = req->picture ? heckecf::parse_picture(req->picture) : heckecf::Picture::Unit;
  r.level = req->level;
  r.lo = req->lo;
  r.hi = req->hi;
  r.samples = req->samples;
  if (r.level < 0) throw heckecf::UsageError("level must be nonnegative");
  return r;
}

}  // namespace

extern "C" {

const char* hcf_last_error(void) { return g_last_error.c_str(); }
const char* hcf_version(void) { return "1.0.0"; }

const char* hcf_buffer_data(const hcf_buffer* b) { return b ? b->data.c_str() : ""; }
size_t hcf_buffer_size(const hcf_buffer* b) { return b ? b->data.size() : 0; }
void hcf_buffer_free(hcf_buffer* b) { delete b; }

hcf_status hcf_field_new(int m, hcf_field** out) {
  return guarded([&] {
    require(out, "out");
    *out = new hcf_field{heckecf::make_field(m)};
  });
}

void hcf_field_free(hcf_field* f) { delete f; }

hcf_status hcf_field_degree(const hcf_field* f, int* out) {
  return guarded([&] {
    require(f, "field");
    require(out, "out");
    *out = f->field->degree();
  });
}

hcf_status hcf_field_lambda(const hcf_field* f, double* out) {
  return guarded([&] {
    require(f, "field");
    require(out, "out");
    *out = heckecf::AlgebraicNumber::lambda(f->field).to_double();
  });
}

hcf_status hcf_field_sign(const hcf_field* f, const char* expr, int* out) {
  return guarded([&] {
    require(f, "field");
    require(expr, "expr");
    require(out, "out");
    *out = heckecf::parse_algebraic(f->field, expr).sign();
  });
}

hcf_status hcf_tree_parse(int m, const char* text, hcf_tree** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new hcf_tree{heckecf::parse_tree(m, text)};
  });
}

hcf_status hcf_tree_jump(int n, hcf_tree** out) {
  return guarded([&] {
    require(out, "out");
    *out = new hcf_tree{heckecf::jump_tree(n)};
  });
}

hcf_status hcf_tree_power(const hcf_tree* t, int n, hcf_tree** out) {
  return guarded([&] {
    require(t, "tree");
    require(out, "out");
    *out = new hcf_tree{heckecf::tree_power(t->tree, n)};
  });
}

void hcf_tree_free(hcf_tree* t) { delete t; }

hcf_status hcf_tree_leaf_count(const hcf_tree* t, size_t* out) {
  return guarded([&] {
    require(t, "tree");
    require(out, "out");
    *out = t->tree.size();
  });
}

hcf_status hcf_attractor_compute(const hcf_tree* t, int max_level, hcf_attractor** out) {
  return guarded([&] {
    require(t, "tree");
    require(out, "out");
    if (max_level < 0) throw heckecf::UsageError("max_level must be nonnegative");
    *out = new hcf_attractor{heckecf::attractor_cover(t->tree, max_level)};
  });
}

void hcf_attractor_free(hcf_attractor* a) { delete a; }

hcf_status hcf_attractor_info(const hcf_attractor* a, hcf_attractor_status* status, int* level, size_t* components) {
  return guarded([&] {
    require(a, "attractor");
    if (status)
      *status = a->result.status == heckecf::AttractorStatus::ExactFixedPoint ? HCF_EXACT_FIXED_POINT : HCF_COVER_ONLY;
    if (level) *level = a->result.level;
    if (components) *components = a->result.cover.size();
  });
}

hcf_status hcf_attractor_component(const hcf_attractor* a, size_t i, double* lo, double* hi) {
  return guarded([&] {
    require(a, "attractor");
    const auto& iv = a->result.cover.parts().at(i);
    if (lo) *lo = iv.lo.to_double();
    if (hi) *hi = iv.hi.to_double();
  });
}

hcf_status hcf_attractor_component_text(const hcf_attractor* a, size_t i, hcf_buffer** lo, hcf_buffer** hi) {
  return guarded([&] {
    require(a, "attractor");
    require(lo, "lo");
    require(hi, "hi");
    const auto& iv = a->result.cover.parts().at(i);
    auto l = std::make_unique<hcf_buffer>(hcf_buffer{iv.lo.to_string()});
    auto h = std::make_unique<hcf_buffer>(hcf_buffer{iv.hi.to_string()});
    *lo = l.release();
    *hi = h.release();
  });
}

hcf_status hcf_mu_density(const hcf_tree* t, const char* picture, double x, int level, double* value,
                          double* error_bound) {
  return guarded([&] {
    require(t, "tree");
    require(value, "value");
    const heckecf::Picture p = picture ? heckecf::parse_picture(picture) : heckecf::Picture::Unit;
    const heckecf::DensityContext ctx(t->tree, p, level);
    const heckecf::DensityValue v = heckecf::mu_density(ctx, x, level);
    *value = v.value;
    if (error_bound) *error_bound = v.error_bound;
  });
}

hcf_status hcf_minkowski_eval(int m, const char* x, int n, double* out) {
  return guarded([&] {
    require(x, "x");
    require(out, "out");
    const heckecf::Field field = heckecf::make_field(m);
    *out = heckecf::minkowski_evaluate(field, heckecf::parse_point(m, x), n).get_d();
  });
}

hcf_status hcf_hoelder_alpha(int m, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = heckecf::hoelder(heckecf::make_field(m)).alpha.mid();
  });
}

hcf_status hcf_jsr_bounds(int m, int n_max, double* lower, double* upper) {
  return guarded([&] {
    const heckecf::JsrBounds b = heckecf::jsr_bruteforce(heckecf::make_field(m), n_max);
    if (lower) *lower = b.lower;
    if (upper) *upper = b.upper;
  });
}

hcf_status hcf_report_field(int m, int digits, const char* format, hcf_buffer** out) {
  return report(out, [&] { return heckecf::report_field(m, digits, format_of(format)); });
}

hcf_status hcf_report_generators(int m, const char* format, hcf_buffer** out) {
  return report(out, [&] { return heckecf::report_generators(m, format_of(format)); });
}

hcf_status hcf_report_embed(int m, const char* word, const char* target, const char* format, hcf_buffer** out) {
  return report(out, [&] {
    require(word, "word");
    require(target, "target");
    return heckecf::report_embed(m, word, target, format_of(format));
  });
}

hcf_status hcf_report_tree_validate(int m, const char* tree, const char* format, hcf_buffer** out) {
  return report(out, [&] {
    require(tree, "tree");
    return heckecf::report_tree_validate(m, tree, format_of(format));
  });
}

hcf_status hcf_report_map_table(const hcf_tree* t, const char* format, hcf_buffer** out) {
  return report(out, [&] {
    require(t, "tree");
    return heckecf::report_map_table(t->tree, format_of(format));
  });
}

hcf_status hcf_report_attractor(const hcf_attractor* a, int digits, const char* format, hcf_buffer** out) {
  return report(out, [&] {
    require(a, "attractor");
    return heckecf::report_attractor(a->result, digits, format_of(format));
  });
}

hcf_status hcf_report_dual(const hcf_attractor* a, int digits, const char* format, hcf_buffer** out) {
  return report(out, [&] {
    require(a, "attractor");
    return heckecf::report_dual(a->result, digits, format_of(format));
  });
}

hcf_status hcf_report_census(hcf_attractor* a, const char* format, hcf_buffer** out) {
  return report(out, [&] {
    require(a, "attractor");
    return heckecf::report_census(a->result, format_of(format));
  });
}

hcf_status hcf_report_minkowski_eval(int m, const char* x, int n, int samples, const char* format, hcf_buffer** out) {
  return report(out, [&] {
    if (samples <= 0) require(x, "x");
    return heckecf::report_minkowski_eval(m, x ? x : "", n, samples, format_of(format));
  });
}

hcf_status hcf_report_minkowski_invert(int m, const char* y, int n, int digits, const char* format, hcf_buffer** out) {
  return report(out, [&] {
    require(y, "y");
    return heckecf::report_minkowski_invert(m, y, n, digits, format_of(format));
  });
}

hcf_status hcf_report_hoelder(int m, int digits, const char* format, hcf_buffer** out) {
  return report(out, [&] { return heckecf::report_hoelder(m, digits, format_of(format)); });
}

hcf_status hcf_report_jsr(int m, int n_max, int witness, const char* format, hcf_buffer** out) {
  return report(out, [&] { return heckecf::report_jsr(m, n_max, witness, format_of(format)); });
}

hcf_status hcf_report_density(const hcf_tree* t, const hcf_density_request* req, const char* format,
                              hcf_buffer** out) {
  return report(out, [&] {
    require(t, "tree");
    return heckecf::report_density(t->tree, density_request(req), format_of(format));
  });
}

hcf_status hcf_report_transfer_check(const hcf_tree* t, const hcf_density_request* req, const char* side,
                                     const char* format, hcf_buffer** out) {
  return report(out, [&] {
    require(t, "tree");
    require(side, "side");
    const std::string s = side;
    if (s != "forward" && s != "dual") throw heckecf::UsageError("side must be forward or dual");
    return heckecf::report_transfer_check(t->tree, density_request(req),
                                          s == "forward" ? heckecf::Side::Forward : heckecf::Side::Dual,
                                          format_of(format));
  });
}

hcf_status hcf_report_orbit(const hcf_tree* t, const hcf_orbit_request* req, const char* format, hcf_buffer** out) {
  return report(out, [&] {
    require(t, "tree");
    require(req, "request");
    heckecf::OrbitRequest r;
    if (req->seed_x) r.seed_x = req->seed_x;
    if (req->seed_y) r.seed_y = req->seed_y;
    r.count = req->count;
    r.options.mode = req->interval_mode ? heckecf::OrbitMode::Interval : heckecf::OrbitMode::Exact;
    if (req->precision_bits) r.options.precision_bits = req->precision_bits;
    if (req->digits > 0) r.digits = req->digits;
    return heckecf::report_orbit(t->tree, r, format_of(format));
  });
}

hcf_status hcf_report_poincare(const hcf_tree* t, int n, const char* format, hcf_buffer** out) {
  return report(out, [&] {
    require(t, "tree");
    return heckecf::report_poincare(t->tree, n, format_of(format));
  });
}

hcf_status hcf_seed_preset(const char* name, hcf_buffer** out) {
  return report(out, [&] {
    require(name, "name");
    return heckecf::seed_preset(name);
  });
}

}  // extern "C"
