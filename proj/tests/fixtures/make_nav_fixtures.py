"""Regenerates the trajectory, judge and evaluation fixtures.

Run from the repository root: python3 tests/fixtures/make_nav_fixtures.py
"""

import json
import os
import random

HERE = os.path.dirname(__file__)
SCREEN = [1080, 2400]


def box(x0, y0, x1, y1):
    w, h = x1 - x0, y1 - y0
    return [x0 + w // 2, y0 + h // 2, w, h]


def click(b):
    return f"CLICK({b[0]}, {b[1]})"


def trajectory(tid, task, steps):
    """steps: list of (action, box or None, description)."""
    out = []
    history = []
    for i, (action, b, description) in enumerate(steps):
        final = i == len(steps) - 1
        out.append({
            "trajectory_id": tid,
            "task": task,
            "step_index": i,
            "screenshot_ref": f"screens/{tid}_{i}.png",
            "next_screenshot_ref": None if final else f"screens/{tid}_{i + 1}.png",
            "gold_action": action,
            "gold_box": b,
            "screen": SCREEN,
            "history": list(history),
            "step_description": None,
        })
        history.append(description)
    return out


def trajectories():
    clock = box(600, 1500, 840, 1740)
    alarm_tab = box(60, 2200, 300, 2340)
    add = box(440, 1980, 640, 2180)
    a = trajectory("alarm", "Set an alarm for 7 am", [
        ("PRESS_HOME", None, "go to the home screen"),
        (click(clock), clock, "open the clock app"),
        (click(alarm_tab), alarm_tab, "open the alarm tab"),
        (click(add), add, "add a new alarm"),
        ("TASK_COMPLETE", None, "finish"),
    ])
    search = box(80, 160, 1000, 280)
    result = box(40, 900, 1040, 1300)
    cart = box(100, 2150, 980, 2300)
    b = trajectory("boots", "Search for hiking boots and add a pair to the cart", [
        (click(search), search, "focus the search field"),
        ("INPUT('hiking boots')", None, "type hiking boots"),
        ("PRESS_ENTER", None, "submit the search"),
        ("SCROLL(down)", None, "scroll through the results"),
        ("SCROLL(down)", None, "scroll further down"),
        (click(result), result, "open the first boot listing"),
        (click(cart), cart, "add the boots to the cart"),
        ("TASK_COMPLETE", None, "finish"),
    ])
    settings = box(120, 600, 360, 840)
    display = box(0, 1100, 1080, 1260)
    c = trajectory("darkmode", "Turn on dark mode", [
        (click(settings), settings, "open settings"),
        ("SCROLL(down)", None, "scroll the settings list"),
        (click(display), display, "open display settings"),
        ("TASK_COMPLETE", None, "finish"),
    ])
    return a + b + c


JUDGE = {
    "alarm/1": {"rational": True, "step_function": "to open the clock app"},
    "alarm/2": {"rational": True, "step_function": "to switch to the alarm list"},
    "alarm/3": {"raw": "1. The screen shows alarms.\n2. Unsure.\n3. Hard to tell."},
    "boots/0": {"rational": True, "step_function": "to focus the search field"},
    "boots/3": {"rational": False},
    "boots/5": {"rational": True, "step_function": "to open the first boot listing"},
    "boots/6": {"rational": True, "step_function": "to add the boots to the cart"},
    "darkmode/0": {"rational": True, "step_function": "to open the settings app"},
    "darkmode/1": {"rational": False},
    "darkmode/3": {"complete": False},
}


def eval_records(seed=20260101, n=100):
    rng = random.Random(seed)
    gold = []
    for i in range(n):
        screen = rng.choice([[1080, 2400], [1000, 1000], [1280, 720]])
        kind = rng.choices(["click", "input", "scroll", "back", "complete"],
                           weights=[6, 1, 1, 1, 1])[0]
        rec = {"id": f"step-{i:03d}", "screen": screen}
        if kind == "click":
            w = rng.randint(10, screen[0] // 3)
            h = rng.randint(10, screen[1] // 6)
            x0 = rng.randint(0, screen[0] - w)
            y0 = rng.randint(0, screen[1] - h)
            b = box(x0, y0, x0 + w, y0 + h)
            rec["action"] = click(b)
            rec["box"] = b
        elif kind == "input":
            rec["action"] = "INPUT('" + rng.choice(["weather today", "Paris", "it's late"]).replace("'", "\\'") + "')"
        elif kind == "scroll":
            rec["action"] = "SCROLL(" + rng.choice(["up", "down", "left", "right"]) + ")"
        elif kind == "back":
            rec["action"] = "PRESS_BACK"
        else:
            rec["action"] = "TASK_COMPLETE"
        gold.append(rec)
    return gold


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")


def main():
    write_jsonl(os.path.join(HERE, "trajectories.jsonl"), trajectories())
    with open(os.path.join(HERE, "judge.json"), "w", encoding="utf-8") as f:
        json.dump(JUDGE, f, indent=1)
        f.write("\n")
    gold = eval_records()
    write_jsonl(os.path.join(HERE, "eval_gold.jsonl"), gold)
    write_jsonl(os.path.join(HERE, "eval_pred_oracle.jsonl"),
                [{"id": g["id"], "action": g["action"]} for g in gold])


if __name__ == "__main__":
    main()
