import sys
from pathlib import Path

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

import pandas as pd
import plotly.express as px
import streamlit as st

from src.atomfib.bench import adjacent_minors, homogeneous_partition_matrix, partition_matrix
from src.atomfib.completion import extended_atomic_fibers, restrict_to_order
from src.atomfib.config import configure_logging, get_budget
from src.atomfib.domains import LatticeContext, MonoidContext
from src.atomfib.errors import AtomfibError
from src.atomfib.fiber import FiberEngine
from src.atomfib.intlin import IntMat
from src.atomfib.matrixio import format_matrix, parse_matrix_text
from src.atomfib.projectlift import ProjectAndLift


configure_logging()
st.set_page_config(page_title="atomfib - Atomic Fibers", layout="wide")

PRESETS = {
    "Twisted cubic": "2 4\n3 2 1 0\n0 1 2 3\n",
    "Parts 2 3 5": format_matrix(partition_matrix((2, 3, 5))),
    "Parts 3 5 7": format_matrix(partition_matrix((3, 5, 7))),
    "Homogeneous parts 1 2 3 4": format_matrix(homogeneous_partition_matrix((1, 2, 3, 4))),
    "Steinberger 3x3": format_matrix(adjacent_minors(3, 3)),
}


@st.cache_data(show_spinner=False)
def compute(matrix_text: str, method: str, domain: str, refinement: str, order: int, budget: int) -> dict:
    matrix = parse_matrix_text(matrix_text)
    engine = FiberEngine(matrix)
    if domain == "monoid":
        context = MonoidContext(matrix, IntMat.from_columns(matrix.columns(), matrix.d))
    else:
        context = LatticeContext.column_lattice(matrix)
    if method == "project-and-lift":
        runner = ProjectAndLift(engine, context, budget, refinement=refinement)
        fibers = runner.run()
        trace = runner.trace_rows()
    else:
        fibers = restrict_to_order(extended_atomic_fibers(engine, context, budget=budget), order)
        trace = []
    return {"fibers": fibers.to_dict(), "trace": trace}


with st.sidebar:
    st.header("Settings")

    st.subheader("Matrix")
    preset = st.selectbox("Preset", list(PRESETS))
    matrix_text = st.text_area("Matrix ('d n' header, then rows)", PRESETS[preset], height=160)

    st.divider()

    st.subheader("Computation")
    method = st.selectbox(
        "Method",
        ["project-and-lift", "completion"],
        help="Project-and-lift computes atomic fibers P_b; completion also handles partially extended fibers.",
    )
    domain = st.selectbox(
        "Right-hand sides",
        ["lattice", "monoid"],
        format_func=lambda d: "Column lattice" if d == "lattice" else "Monoid of the columns",
    )
    refinement = "hilbert"
    if domain == "monoid":
        if method == "completion":
            st.warning("Completion needs a lattice; switch to project-and-lift for monoids.")
        refinement = st.radio("Preorder refinement", ["hilbert", "cover"], horizontal=True)
    try:
        n_cols = parse_matrix_text(matrix_text).n
    except AtomfibError:
        n_cols = 0
    order = n_cols
    if method == "completion":
        order = st.slider("Order k", min_value=0, max_value=max(n_cols, 1), value=n_cols)
    budget = st.number_input("Candidate budget (0 = unbounded)", min_value=0, value=get_budget() or 0, step=1000)

st.title("Atomic Fibers")

with st.spinner("Computing atomic fibers..."):
    try:
        result = compute(matrix_text, method, domain, refinement, order, int(budget) or None)
    except (AtomfibError, ValueError) as e:
        st.error(f"❌ {e}")
        st.stop()

data = result["fibers"]
col1, col2, col3 = st.columns(3)
col1.metric("Atomic fibers", data["count"])
col2.metric("Order", data["order"])
col3.metric("Neutral rhs counted", "yes" if data["neutral"] else "no")

df = pd.DataFrame(
    {
        "rhs": [str(tuple(f["rhs"])) for f in data["fibers"]],
        "finite": [f["finite"] for f in data["fibers"]],
        "size": [len(f.get("elements", f.get("min_reps", []))) for f in data["fibers"]],
    }
)
st.subheader("Right-hand sides")
st.dataframe(df, hide_index=True, use_container_width=True)

if data["fibers"] and len(data["rhs"][0]) == 2:
    points = pd.DataFrame(data["rhs"], columns=["b1", "b2"])
    fig = px.scatter(points, x="b1", y="b2", title="Atomic right-hand sides")
    st.plotly_chart(fig, use_container_width=True)

if data["fibers"]:
    st.subheader("Fiber details")
    choice = st.selectbox("Right-hand side", df["rhs"].tolist())
    listing = data["fibers"][df["rhs"].tolist().index(choice)]
    kind = "elements" if "elements" in listing else "min_reps"
    st.caption("All elements" if kind == "elements" else "Minimal representatives (fiber is infinite)")
    st.dataframe(pd.DataFrame(listing[kind]), use_container_width=True)

if result["trace"]:
    with st.expander("Lifting steps"):
        st.dataframe(pd.DataFrame(result["trace"]), hide_index=True, use_container_width=True)
