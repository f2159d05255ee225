import streamlit as st
import pandas as pd
import plotly.express as px

from services.chern_service import build_alpha, solve_gamma, solve_simple_chern
from services.valuation_service import bm_series, verify_appendix_a
from utils.exactarith import rat_to_str, val2

# Set page config
st.set_page_config(
    page_title="Valuations",
    page_icon="📐",
    layout="wide"
)

# Title and description
st.title("Valuations and Chern Characters")
st.markdown("""
The coefficients b_m of (ln(1+z)/z)^(4k+1) control every K-theoretic step. This page shows:
- b_m and its 2-adic valuation for 0 ≤ m ≤ 4k
- The seven valuation lemmas checked exactly
- The simple Chern solution on Z and the γ/α classes on Z(k)
""")

with st.sidebar:
    st.header("Parameters")
    k = st.slider("k", min_value=1, max_value=32, value=2)
    e_unit = st.selectbox("e-unit for odd k", [1, 3, 5, 7], index=0)

    st.markdown("---")
    st.caption("All values are exact rationals.")


@st.cache_data
def coefficient_table(k):
    series = bm_series(k)
    rows = []
    for m in range(4 * k + 1):
        nu = val2(series[m])
        rows.append({"m": m, "b_m": rat_to_str(series[m]), "nu": None if nu.is_inf else int(nu)})
    return rows


@st.cache_data
def lemma_table(k):
    return verify_appendix_a(k).to_rows()


df = pd.DataFrame(coefficient_table(k))

coeff_tab, lemma_tab, chern_tab = st.tabs(["Coefficients", "Valuation Lemmas", "Chern Solutions"])

with coeff_tab:
    fig = px.line(
        df,
        x="m",
        y="nu",
        markers=True,
        title=f"ν(b_m) for k = {k}",
        labels={"m": "m", "nu": "ν(b_m)"}
    )
    fig.add_hline(y=-(4 * k - 2), line_dash="dash", annotation_text="-(4k-2)")
    fig.add_hline(y=-4 * k, line_dash="dot", annotation_text="-4k")
    fig.update_layout(hovermode="x unified", height=450)
    st.plotly_chart(fig, use_container_width=True)
    st.dataframe(df, use_container_width=True, hide_index=True)

with lemma_tab:
    rows = lemma_table(k)
    lemmas = pd.DataFrame(rows)
    if lemmas["pass"].all():
        st.success(f"All {len(rows)} lemma checks pass for k = {k}.")
    else:
        st.error(f"Failing lemmas: {', '.join(lemmas.loc[~lemmas['pass'], 'lemma'])}")
    st.dataframe(lemmas, use_container_width=True, hide_index=True)

with chern_tab:
    try:
        kclass, d = solve_simple_chern(k)
        col1, col2 = st.columns(2)
        with col1:
            st.metric("d in ch(φ) = 2^(4k-2) + d·x^(4k)", rat_to_str(d))
        with col2:
            st.metric("ν(d)", str(val2(d)))
    except Exception as e:
        st.error(f"Failed to solve the simple Chern problem: {str(e)}")

    if k < 2:
        st.info("The γ and α classes need k ≥ 2.")
    else:
        try:
            gamma = solve_gamma(k)
            st.subheader("γ residuals")
            st.dataframe(pd.DataFrame([
                {"coefficient": name, "value": rat_to_str(c), "nu": str(val2(c))}
                for name, c in (("c_(8k-8)", gamma.c8k8), ("c_(8k-6)", gamma.c8k6), ("c_(8k-4)", gamma.c8k4))
            ]), use_container_width=True, hide_index=True)

            alpha = build_alpha(k, e_unit)
            st.subheader("ch(c(α_k))")
            st.json(alpha.to_dict())
            if k % 2 == 0:
                st.success(f"Constant Chern character {rat_to_str(alpha[0])}: 2^(4k-4-ν(k)) survives.")
            else:
                st.warning(f"Odd k: top coefficient {rat_to_str(alpha[4 * k - 2])} with ν = {val2(alpha[4 * k - 2])}.")
        except Exception as e:
            st.error(f"Failed to build the γ/α classes: {str(e)}")

# Footer
st.markdown("---")
st.caption("Pin(2) Mahowald Line Verifier | Valuations")
