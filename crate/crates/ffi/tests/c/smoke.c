#include <stdio.h>
#include <string.h>

#include "hullkit.h"

int main(void) {
    HkAlgebra *alg = NULL;
    HkSemigroup *end = NULL;
    char *json = NULL;
    size_t q = 0;

    if (hk_algebra_builtin("sym:3", &alg) != HK_STATUS_OK) return 10;
    if (hk_end(alg, &end) != HK_STATUS_OK) return 11;
    printf("end %zu\n", hk_semigroup_order(end));
    if (hk_hull_report_json(alg, "non-units", &json) != HK_STATUS_OK) return 12;
    printf("realized %s\n", strstr(json, "\"omega_realized_by_t\": true") ? "yes" : "no");
    hk_string_free(json);
    if (hk_quotient_size(alg, "non-units", &q) != HK_STATUS_OK) return 13;
    printf("quotient %zu\n", q);
    if (hk_hull_report_json(alg, "rank:x", &json) != HK_STATUS_PARSE) return 14;
    printf("error %s\n", hk_last_error() ? "set" : "unset");
    hk_semigroup_free(end);
    hk_algebra_free(alg);
    return 0;
}
