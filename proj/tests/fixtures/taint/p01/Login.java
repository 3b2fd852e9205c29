package fx.p01;

import java.sql.Connection;
import java.sql.ResultSet;
import javax.servlet.http.HttpServletRequest;

public class Login {
    private Connection conn;

    public ResultSet find(HttpServletRequest req) throws Exception {
        String name = req.getParameter("name");
        String sql = "SELECT * FROM users WHERE name='" + name + "'";
        return conn.createStatement().executeQuery(sql);
    }

    public ResultSet findSafe(HttpServletRequest req) throws Exception {
        String name = req.getParameter("name");
        name = ESAPI.encoder().encodeForSQL(new MySQLCodec(), name);
        String sql = "SELECT * FROM users WHERE name='" + name + "'";
        return conn.createStatement().executeQuery(sql);
    }
}
