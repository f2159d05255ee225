import streamlit as st
import pandas as pd

from services.steenrod_service import (
    attach_table,
    build_cell_diagram,
    periodicity_check,
    render_dot,
    render_text,
    zk_cell_diagram,
    zk_middle_structure,
)
from utils.param_validator import validate_window

# Set page config
st.set_page_config(
    page_title="Thom Spectra",
    page_icon="🧵",
    layout="wide"
)

# Title and description
st.title("Thom Spectra X(m)")
st.markdown("""
Cells and attaching maps of the Thom spectra of -mλ over BPin(2):
- Sq¹ and Sq² computed by the Cartan formula, checked against the residue tables
- Cell diagrams on any window, with 2, η, η² and ν edges
- The middle of Z(k): split for k even, an η³ cone for k odd
""")

with st.sidebar:
    st.header("Spectrum")
    m = st.number_input("m", min_value=0, max_value=200, value=11, step=1)
    a = st.number_input("Window bottom", value=-3, step=1)
    b = st.number_input("Window top", value=8, step=1)
    k = st.slider("k for Z(k)", min_value=1, max_value=16, value=2)


@st.cache_data
def residue_rows():
    rows = []
    for (r, s), row in attach_table().items():
        rows.append({
            "m mod 4": r,
            "j mod 4": s,
            "cell": row.has_cell,
            "2": row.two,
            "η": row.eta,
            "η²": row.eta_sq,
            "η between columns": row.between_col_eta,
        })
    return rows


diagram_tab, table_tab, zk_tab = st.tabs(["Cell Diagram", "Residue Tables", "Z(k)"])

with diagram_tab:
    is_valid, window, error_message = validate_window(a, b)
    if not is_valid:
        st.error(f"Invalid window: {error_message}")
    else:
        desc = build_cell_diagram(int(m), *window)
        if not desc.cells:
            st.info(f"X({m}) has no cells in [{a}, {b}].")
        else:
            st.graphviz_chart(render_dot(desc, f"X({m})"))
            st.code(render_text(desc), language="text")

with table_tab:
    st.dataframe(pd.DataFrame(residue_rows()), use_container_width=True, hide_index=True)
    result = periodicity_check(16)
    if result:
        st.success("Attaching data is 4-periodic in m and j.")
    else:
        st.error(f"Periodicity violated: {result.violation}")

with zk_tab:
    structure = zk_middle_structure(k)
    st.metric("Middle of Z(k)", structure.value)
    st.graphviz_chart(render_dot(zk_cell_diagram(k), f"Z({k})"))

# Footer
st.markdown("---")
st.caption("Pin(2) Mahowald Line Verifier | Thom spectra")
