#!/usr/bin/env python3
# Copyright 2026 The Blindspot Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the bundled scenario fixtures to tests/fixtures."""

import argparse
import json
import math
from pathlib import Path

EGO_PARAMS = {"length": 4.5, "width": 2.0, "wheelbase": 2.7, "sensor_range": 50.0, "a_max": 8.0, "v_max": 15.0}


def r(x):
    return round(x, 6)


def pts(seq):
    return [[r(x), r(y)] for x, y in seq]


def line(p0, p1, n):
    return [(p0[0] + (p1[0] - p0[0]) * i / n, p0[1] + (p1[1] - p0[1]) * i / n) for i in range(n + 1)]


def arc(centre, radius, a0, a1, n):
    return [
        (centre[0] + radius * math.cos(a0 + (a1 - a0) * i / n), centre[1] + radius * math.sin(a0 + (a1 - a0) * i / n))
        for i in range(n + 1)
    ]


def lanelet(lid, left, right, successors=(), speed_limit=8.33, adj_left=None, adj_right=None):
    out = {"id": lid, "left": pts(left), "right": pts(right), "successors": list(successors)}
    if speed_limit is not None:
        out["speed_limit"] = speed_limit
    if adj_left is not None:
        out["adj_left"] = adj_left
    if adj_right is not None:
        out["adj_right"] = adj_right
    return out


def rect(cx, cy, length, width, heading=0.0):
    c, s = math.cos(heading), math.sin(heading)
    corners = [(length / 2, -width / 2), (length / 2, width / 2), (-length / 2, width / 2), (-length / 2, -width / 2)]
    return pts([(cx + c * u - s * v, cy + s * u + c * v) for u, v in corners])


def track(x0, y0, theta, v, steps, dt=0.1, t0=0.0, start_walking=0.0):
    """Constant-velocity states; the agent waits in place until `start_walking`."""
    out = []
    for k in range(steps + 1):
        t = t0 + k * dt
        moving = max(0.0, t - start_walking)
        speed = v if t >= start_walking - 1e-9 else 0.0
        out.append(
            {
                "t": r(t),
                "x": r(x0 + v * moving * math.cos(theta)),
                "y": r(y0 + v * moving * math.sin(theta)),
                "theta": r(theta),
                "v": r(speed),
            }
        )
    return out


def scenario(name, lanelets, ego, reference_path, goal_s, static=(), dynamic=(), horizon_steps=200, dt=0.1):
    return {
        "meta": {"name": name, "dt": dt, "horizon_steps": horizon_steps},
        "lanelets": lanelets,
        "static_obstacles": list(static),
        "dynamic_obstacles": list(dynamic),
        "ego": {
            "initial": {"x": ego[0], "y": ego[1], "theta": r(ego[2]), "v": ego[3]},
            "params": EGO_PARAMS,
            "reference_path": pts(reference_path),
            "goal_s": goal_s,
        },
    }


def two_lane_road(length=150.0, n=30, parking=False):
    """Eastbound lane y in [-3.5, 0], westbound lane y in [0, 3.5], optional parking strip."""
    lls = [
        lanelet(1, line((0, 0), (length, 0), n), line((0, -3.5), (length, -3.5), n), adj_left=2),
        lanelet(2, line((length, 0), (0, 0), n), line((length, 3.5), (0, 3.5), n)),
    ]
    if parking:
        lls.append(lanelet(3, line((0, -3.5), (length, -3.5), n), line((0, -6.0), (length, -6.0), n)))
    return lls


def straight_empty():
    return scenario(
        "straight_empty", two_lane_road(), (10.0, -1.75, 0.0, 8.33), line((0, -1.75), (150, -1.75), 30), 140.0
    )


def parked_car():
    static = [{"id": 10, "polygon": rect(32.25, -4.75, 4.5, 2.0)}]
    return scenario(
        "parked_car",
        two_lane_road(parking=True),
        (10.0, -1.75, 0.0, 8.33),
        line((0, -1.75), (150, -1.75), 30),
        140.0,
        static=static,
    )


def two_cars():
    static = [
        {"id": 10, "polygon": rect(27.25, -4.75, 4.5, 2.0)},
        {"id": 11, "polygon": rect(32.5, -5.2, 3.0, 1.2)},
    ]
    return scenario(
        "two_cars",
        two_lane_road(parking=True),
        (10.0, -1.75, 0.0, 8.33),
        line((0, -1.75), (150, -1.75), 30),
        140.0,
        static=static,
    )


def right_bend():
    """North-bound road turning right around (12, 0); ego keeps to the inner lane."""
    c = (12.0, 0.0)
    n_arc = 24
    inner_l = line((0.0, -60.0), (0.0, 0.0), 30) + arc(c, 12.0, math.pi, math.pi / 2, n_arc)[1:] + line((12.0, 12.0), (60.0, 12.0), 24)[1:]
    inner_r = line((3.5, -60.0), (3.5, 0.0), 30) + arc(c, 8.5, math.pi, math.pi / 2, n_arc)[1:] + line((12.0, 8.5), (60.0, 8.5), 24)[1:]
    outer_r = line((-3.5, -60.0), (-3.5, 0.0), 30) + arc(c, 15.5, math.pi, math.pi / 2, n_arc)[1:] + line((12.0, 15.5), (60.0, 15.5), 24)[1:]
    ref = line((1.75, -60.0), (1.75, 0.0), 30) + arc(c, 10.25, math.pi, math.pi / 2, n_arc)[1:] + line((12.0, 10.25), (60.0, 10.25), 24)[1:]
    lls = [
        lanelet(1, inner_l, inner_r, adj_left=2),
        lanelet(2, list(reversed(inner_l)), list(reversed(outer_r))),
    ]
    return scenario("right_bend", lls, (1.75, -30.0, math.pi / 2, 8.0), ref, 95.0)


def scenario2_truck():
    lls = two_lane_road() + [
        lanelet(3, line((150, 3.5), (0, 3.5), 30), line((150, 5.5), (0, 5.5), 30), speed_limit=5.0),
    ]
    truck = {
        "id": 20,
        "kind": "truck",
        "shape": {"length": 10.0, "width": 2.5},
        "states": track(30.0, 1.75, math.pi, 0.0, 200),
    }
    return scenario(
        "scenario2_truck",
        lls,
        (5.0, -1.75, 0.0, 8.0),
        line((0, -1.75), (150, -1.75), 30),
        140.0,
        dynamic=[truck],
    )


def scenario1_left_turn(cyclist_speed=7.0, cyclist_y0=None, car_y=6.0):
    """Four-way junction inside [-7, 7]^2; ego turns left across the south-bound flow."""
    box = 7.0
    ll = [
        # L1 north-bound approach.
        lanelet(1, line((0, -60), (0, -box), 20), line((3.5, -60), (3.5, -box), 20), successors=[2, 3]),
        # L2 north-bound straight through the junction.
        lanelet(2, line((0, -box), (0, box), 8), line((3.5, -box), (3.5, box), 8), successors=[8]),
        # L3 left-turn arc.
        lanelet(
            3,
            arc((-box, -box), 7.0, 0.0, math.pi / 2, 16),
            arc((-box, -box), 10.5, 0.0, math.pi / 2, 16),
            successors=[4],
        ),
        # L4 west-bound exit.
        lanelet(4, line((-box, 0), (-60, 0), 20), line((-box, 3.5), (-60, 3.5), 20)),
        # L5 south-bound approach.
        lanelet(5, line((0, 60), (0, box), 20), line((-3.5, 60), (-3.5, box), 20), successors=[6]),
        # L6 south-bound straight through the junction.
        lanelet(6, line((0, box), (0, -box), 8), line((-3.5, box), (-3.5, -box), 8), successors=[7]),
        # L7 south-bound exit.
        lanelet(7, line((0, -box), (0, -60), 20), line((-3.5, -box), (-3.5, -60), 20)),
        # L8 north-bound exit.
        lanelet(8, line((0, box), (0, 60), 20), line((3.5, box), (3.5, 60), 20)),
    ]
    ref = line((1.75, -60), (1.75, -box), 20) + arc((-box, -box), 8.75, 0.0, math.pi / 2, 16)[1:] + line((-box, 1.75), (-60, 1.75), 20)[1:]
    # Crossing of the ego arc with the cyclist line x = -3.0.
    phi = math.acos((-3.0 + box) / 8.75)
    s_cross = (45.0 - box) + 8.75 * phi
    ego_v = 8.0
    t_cross = s_cross / ego_v
    y_cross = -box + 8.75 * math.sin(phi)
    y0 = cyclist_y0 if cyclist_y0 is not None else y_cross + cyclist_speed * t_cross
    car = {
        "id": 30,
        "kind": "car",
        "shape": {"length": 5.0, "width": 2.2},
        "states": track(-1.6, car_y, -math.pi / 2, 0.0, 200),
    }
    bike = {
        "id": 31,
        "kind": "bicycle",
        "shape": {"length": 1.8, "width": 0.6},
        "states": track(-3.0, r(y0), -math.pi / 2, cyclist_speed, 200),
    }
    return scenario(
        "scenario1_left_turn",
        ll,
        (1.75, -45.0, math.pi / 2, ego_v),
        ref,
        95.0,
        dynamic=[car, bike],
    )


def scenario4_parked_cars(ped_speed=1.4, ped_start=2.4):
    cars = []
    x = 20.0
    for i in range(6):
        cars.append({"id": 40 + i, "polygon": rect(x + 2.25, -4.75, 4.5, 2.0)})
        x += 5.7
    gap_x = 20.0 + 5.7 * 3 - 0.6
    ped = {
        "id": 50,
        "kind": "pedestrian",
        "shape": {"radius": 0.35},
        "states": track(gap_x, -4.6, math.pi / 2, ped_speed, 150, start_walking=ped_start),
    }
    return scenario(
        "scenario4_parked_cars",
        two_lane_road(parking=True),
        (5.0, -1.75, 0.0, 8.33),
        line((0, -1.75), (150, -1.75), 30),
        140.0,
        static=cars,
        dynamic=[ped],
    )


def invalid_fixtures():
    base = straight_empty()
    bad_successor = json.loads(json.dumps(base))
    bad_successor["lanelets"][0]["successors"] = [99]
    off_road = json.loads(json.dumps(base))
    off_road["ego"]["initial"]["y"] = 20.0
    bad_kind = parked_car()
    bad_kind["dynamic_obstacles"] = [
        {"id": 5, "kind": "hovercraft", "shape": {"length": 4.5, "width": 2.0}, "states": track(50, 1.75, math.pi, 5, 5)}
    ]
    return {"bad_successor": bad_successor, "off_road_ego": off_road, "bad_kind": bad_kind}


FIXTURES = {
    "straight_empty": straight_empty,
    "parked_car": parked_car,
    "two_cars": two_cars,
    "right_bend": right_bend,
    "scenario1_left_turn": scenario1_left_turn,
    "scenario2_truck": scenario2_truck,
    "scenario4_parked_cars": scenario4_parked_cars,
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "tests" / "fixtures"))
    args = parser.parse_args()
    out = Path(args.out)
    (out / "invalid").mkdir(parents=True, exist_ok=True)
    for name, make in FIXTURES.items():
        (out / f"{name}.json").write_text(json.dumps(make(), indent=1) + "\n")
    for name, doc in invalid_fixtures().items():
        (out / "invalid" / f"{name}.json").write_text(json.dumps(doc, indent=1) + "\n")


if __name__ == "__main__":
    main()
