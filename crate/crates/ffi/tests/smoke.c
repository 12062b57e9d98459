#include <stdio.h>
#include <string.h>
#include "brauer_forge.h"

int main(void) {
    BfGroup *g = NULL;
    BfReport *r = NULL;
    char *json = NULL;
    BfVerdict v = BF_VERDICT_FAIL;
    uint64_t order = 0;

    if (bf_group_load("gl23", &g) != BF_STATUS_OK) return 10;
    if (bf_group_order(g, &order) != BF_STATUS_OK || order != 48) return 11;
    if (bf_check_theorem2(g, g, 1, 0, &r) != BF_STATUS_OK) return 12;
    if (bf_report_verdict(r, &v) != BF_STATUS_OK || v != BF_VERDICT_PASS) return 13;
    if (bf_report_to_json(r, true, &json) != BF_STATUS_OK) return 14;
    if (strstr(json, "\"verdict\": \"pass\"") == NULL) return 15;
    bf_string_free(json);
    bf_report_free(r);

    BfGroup *bad = NULL;
    if (bf_group_load("nope", &bad) != BF_STATUS_UNKNOWN_GROUP) return 16;
    if (bf_last_error() == NULL) return 17;

    bf_group_free(g);
    printf("ok %s\n", bf_version());
    return 0;
}
