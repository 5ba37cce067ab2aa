# Paquete del solver BP-RK
