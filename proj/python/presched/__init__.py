"""Dict-level wrappers over the compiled scheduling core."""

import json

from . import _presched
from ._presched import PreschedError, cap, is_supersequence

__all__ = [
    "PreschedError",
    "brute_force_optimal",
    "cap",
    "check_feasible",
    "error_code",
    "gen_greedy_killer",
    "gen_multiresource_lb",
    "gen_online_lb_gadget",
    "gen_random_dag",
    "is_supersequence",
    "lts_brute_force",
    "lts_prep",
    "lts_solution_to_schedule",
    "lts_to_rs",
    "makespan",
    "run_greedy",
    "run_onl",
    "schedule_to_lts_solution",
    "schedule_to_supersequence",
    "scs_brute_force",
    "scs_to_rs",
    "supersequence_to_schedule",
    "validate_instance",
]


def _s(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def error_code(exc):
    """MISSING_JOB, TOO_LARGE, ... from a PreschedError."""
    return _presched.error_code(str(exc))


def validate_instance(inst):
    return json.loads(_presched.validate_instance(_s(inst)))


def check_feasible(inst, sched):
    return json.loads(_presched.check_feasible(_s(inst), _s(sched)))


def makespan(inst, sched):
    return _presched.makespan(_s(inst), _s(sched))


def run_onl(inst):
    sched, trace = _presched.run_onl(_s(inst))
    return json.loads(sched), json.loads(trace)


def run_greedy(inst):
    return json.loads(_presched.run_greedy(_s(inst)))


def brute_force_optimal(inst, limit=9):
    best, sched = _presched.brute_force_optimal(_s(inst), limit)
    return best, json.loads(sched)


def gen_online_lb_gadget(m, num_gadgets=0, seed=1, fat_duration=1):
    return json.loads(_presched.gen_online_lb_gadget(m, num_gadgets, seed, fat_duration))


def gen_multiresource_lb(d, m, seed=1):
    return json.loads(_presched.gen_multiresource_lb(d, m, seed))


def gen_greedy_killer(n):
    return json.loads(_presched.gen_greedy_killer(n))


def gen_random_dag(n, edge_prob=0.3, max_dur=8, d=1, seed=1):
    return json.loads(_presched.gen_random_dag(n, edge_prob, max_dur, d, seed))


def scs_brute_force(scs):
    return _presched.scs_brute_force(_s(scs))


def lts_brute_force(lts):
    cost, sol = _presched.lts_brute_force(_s(lts))
    return cost, json.loads(sol)


def scs_to_rs(scs):
    inst, mapping = _presched.scs_to_rs(_s(scs))
    return json.loads(inst), json.loads(mapping)


def supersequence_to_schedule(mapping, z):
    return json.loads(_presched.supersequence_to_schedule(_s(mapping), list(z)))


def schedule_to_supersequence(mapping, sched):
    return _presched.schedule_to_supersequence(_s(mapping), _s(sched))


def lts_prep(lts):
    return json.loads(_presched.lts_prep(_s(lts)))


def lts_to_rs(lts):
    inst, mapping = _presched.lts_to_rs(_s(lts))
    return json.loads(inst), json.loads(mapping)


def lts_solution_to_schedule(mapping, sol):
    return json.loads(_presched.lts_solution_to_schedule(_s(mapping), _s(sol)))


def schedule_to_lts_solution(mapping, sched):
    return json.loads(_presched.schedule_to_lts_solution(_s(mapping), _s(sched)))
