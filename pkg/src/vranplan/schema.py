"""JSON schema for plan documents and the validator used by the CLI."""
from __future__ import annotations

from typing import List

import jsonschema

_POS = {"type": "number", "exclusiveMinimum": 0}
_NONNEG = {"type": "number", "minimum": 0}
_COUNT = {"type": "integer", "minimum": 0}

_BLOCK = {
    "type": "object",
    "required": ["carrier_label", "band", "f_low", "f_high"],
    "additionalProperties": False,
    "properties": {
        "carrier_label": {"type": "string", "minLength": 1},
        "band": {"type": "string", "minLength": 1},
        "f_low": _NONNEG,
        "f_high": _POS,
        "bandwidth": _POS,
        "profit": _NONNEG,
    },
}

_PATH = {
    "type": "object",
    "required": ["id", "fiber_km"],
    "additionalProperties": False,
    "properties": {
        "id": {"type": "string", "minLength": 1},
        "fiber_km": _NONNEG,
        "hops": _COUNT,
        "per_km_delay_us": _NONNEG,
        "per_hop_delay_us": _NONNEG,
        "fr": {"enum": ["FR1", "FR2"]},
        "harq_budget_us": _POS,
        "required_compute_us": _NONNEG,
        "crypto_us": _NONNEG,
        "sweep_km": {"type": "array", "items": _NONNEG},
    },
}

_UE = {
    "type": "object",
    "required": ["id", "gain"],
    "additionalProperties": False,
    "properties": {
        "id": {"type": "string", "minLength": 1},
        "gain": _POS,
        "weight": _POS,
        "intent": {"type": "object", "additionalProperties": {"type": "string"}},
    },
}

_SLICE = {
    "type": "object",
    "required": ["id", "p_max", "users"],
    "additionalProperties": False,
    "properties": {
        "id": {"type": "string", "minLength": 1},
        "p_max": _POS,
        "users": {"type": "array", "minItems": 1, "items": _UE},
        "step": _POS,
        "tol": _POS,
        "max_iter": {"type": "integer", "minimum": 1},
        "oracle_resolution": _POS,
    },
}

_GOVERNANCE = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "delay_cost": {
            "type": "object",
            "required": ["base_cost", "tau_c"],
            "additionalProperties": False,
            "properties": {"base_cost": _POS, "tau_c": _POS, "taus": {"type": "array", "items": _NONNEG}},
        },
        "clock": {
            "type": "object",
            "required": ["horizon_tech", "horizon_build"],
            "additionalProperties": False,
            "properties": {k: _POS for k in
                           ("horizon_tech", "horizon_build", "node_cycle", "v_tech", "v_build", "v_ops")},
        },
        "variety": {
            "type": "object",
            "required": ["v_internal", "v_external"],
            "additionalProperties": False,
            "properties": {"v_internal": _COUNT, "v_external": _COUNT},
        },
    },
}

PLAN_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "vranplan plan document",
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "holdings": {"type": "array", "items": _BLOCK},
        "ca_groups": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "carriers"],
                "additionalProperties": False,
                "properties": {
                    "label": {"type": "string", "minLength": 1},
                    "carriers": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                },
            },
        },
        "du_profile": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "max_cells": {"type": "integer", "minimum": 1},
                "max_abw_fr1": _POS,
                "max_abw_fr2": _POS,
                "cost": _NONNEG,
                "cc_cap_fr1": _POS,
                "cc_cap_fr2": _POS,
            },
        },
        "topology": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"vdus_per_site": {"type": "integer", "minimum": 1},
                           "sites_per_vcu": {"type": "integer", "minimum": 1}},
        },
        "addressing": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"market": {"type": "integer", "minimum": 0, "maximum": 999},
                           "vcu": {"type": "integer", "minimum": 0, "maximum": 9999}},
        },
        "fronthaul": {"type": "array", "items": _PATH},
        "security": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "cipher": {
                    "type": "object",
                    "required": ["mode"],
                    "additionalProperties": False,
                    "properties": {"mode": {"enum": ["NONE", "PER_PDU_SOFTWARE", "HW_OFFLOAD", "INTERFACE_TLS"]},
                                   "penalty": _NONNEG},
                },
                "dss": {
                    "type": "object",
                    "required": ["mode"],
                    "additionalProperties": False,
                    "properties": {"mode": {"enum": ["OFF", "ON"]}, "penalty": _NONNEG},
                },
                "spectral_efficiency_bps_per_hz": _POS,
            },
        },
        "slices": {"type": "array", "items": _SLICE},
        "governance": _GOVERNANCE,
        "solver": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "objective": {"enum": ["MIN_DUS", "MAX_PROFIT"]},
                "du_budget": {"type": "integer", "minimum": 1},
            },
        },
    },
}


def _where(err: jsonschema.ValidationError) -> str:
    return "/".join(str(p) for p in err.absolute_path) or "<root>"


def validate_document(doc) -> List[str]:
    """Return ``path: message`` diagnostics; an empty list means the document is valid."""
    validator = jsonschema.Draft202012Validator(PLAN_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    return [f"{_where(e)}: {e.message}" for e in errors]
