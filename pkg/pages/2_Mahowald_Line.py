import streamlit as st
import pandas as pd
import plotly.express as px

from services.mahowald_service import (
    b2_sign_check,
    fm_exists,
    historical_bounds,
    mahowald_line,
    mahowald_lower_bound,
    spin_form_levels,
    spin_geography,
)

# Set page config
st.set_page_config(
    page_title="Mahowald Line",
    page_icon="📈",
    layout="wide"
)

# Title and description
st.title("Mahowald Line and Spin Geography")
st.markdown("""
The Mahowald line 𝔏(m) is the largest skeleton of X(m) whose collapse map is null. From it follow:
- Existence of level-(p, q) Furuta-Mahowald classes
- The main bound on q for spin forms 2pE₈ ⊕ qH
- A comparison with earlier necessary conditions
""")

with st.sidebar:
    st.header("Ranges")
    mmax = st.slider("Largest m", min_value=8, max_value=256, value=64)
    pmax = st.slider("Largest p", min_value=2, max_value=64, value=24)


@st.cache_data
def staircase(mmax):
    rows = []
    for m in range(mmax + 1):
        rows.append({"m": m, "value": mahowald_line(m), "series": "𝔏(m)"})
        if m >= 4:
            rows.append({"m": m, "value": mahowald_lower_bound(m), "series": "lower bound"})
    return rows


@st.cache_data
def existence_grid(pmax):
    return [
        {"p": p, "q": q, "exists": int(fm_exists(p, q).exists)}
        for p in range(1, pmax + 1)
        for q in range(0, 4 * pmax + 9)
    ]


line_tab, grid_tab, history_tab, geography_tab = st.tabs(
    ["Staircase", "Existence Grid", "Historical Bounds", "Geography"])

with line_tab:
    fig = px.line(
        pd.DataFrame(staircase(mmax)),
        x="m",
        y="value",
        color="series",
        line_shape="hv",
        title="𝔏(m) against the staircase lower bound",
        labels={"m": "m", "value": "cell dimension", "series": ""}
    )
    fig.update_layout(hovermode="x unified", height=500)
    st.plotly_chart(fig, use_container_width=True)

with grid_tab:
    grid = pd.DataFrame(existence_grid(pmax)).pivot(index="q", columns="p", values="exists")
    fig = px.imshow(
        grid,
        origin="lower",
        color_continuous_scale=["#F44336", "#4CAF50"],
        title="Level-(p, q) Furuta-Mahowald classes (green: exists)",
        labels={"x": "p", "y": "q", "color": "exists"}
    )
    fig.update_layout(height=600, coloraxis_showscale=False)
    st.plotly_chart(fig, use_container_width=True)

with history_tab:
    history = pd.DataFrame([historical_bounds(p) for p in range(2, pmax + 1)])
    fig = px.line(
        history.melt(id_vars="p", var_name="bound", value_name="q_min"),
        x="p",
        y="q_min",
        color="bound",
        markers=True,
        title="Necessary lower bounds on q"
    )
    fig.update_layout(hovermode="x unified", height=450)
    st.plotly_chart(fig, use_container_width=True)
    st.dataframe(history, use_container_width=True, hide_index=True)

with geography_tab:
    with st.form("geography"):
        b2 = st.number_input("b₂", min_value=0, value=22, step=1)
        sign = st.number_input("Signature", value=-16, step=16)
        exceptional = st.checkbox("Homeomorphic to S⁴, S²×S² or K3")
        submitted = st.form_submit_button("Check")

    if submitted:
        try:
            p, q = spin_form_levels(int(b2), int(sign))
            verdict = spin_geography(p, q)
            col1, col2 = st.columns(2)
            with col1:
                st.metric("Form", f"{2 * p}E₈ ⊕ {q}H")
            with col2:
                st.metric("Verdict", verdict.verdict.value)
            if b2_sign_check(int(b2), int(sign), exceptional):
                st.success("b₂ ≥ (10/8)|sign| + 4 holds.")
            else:
                st.error("b₂ < (10/8)|sign| + 4: no smooth spin manifold outside the exceptions.")
            st.caption(f"Rule applied: {verdict.rule}, bound q ≥ {verdict.bound}")
        except Exception as e:
            st.error(f"Failed to check geography: {str(e)}")

# Footer
st.markdown("---")
st.caption("Pin(2) Mahowald Line Verifier | Mahowald line")
